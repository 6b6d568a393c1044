"""Command-line front end: one executable with pipeline subcommands.

Exit codes: 0 success, 1 usage error (bad flags/arguments), 2 data error
(unreadable or malformed inputs, insufficient corpus data).  All output files
are written atomically (temp file + rename) so interrupted runs never leave
truncated CSVs, and identical invocations produce byte-identical files
regardless of --jobs.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from pathlib import Path

from . import __version__
from .corpus import (
    CorpusError,
    SignatureFormatError,
    demo_signal,
    generate_corpus,
    load_corpus,
    parse_signature,
    write_corpus,
)
from .evaluation import DcfParams, det_points, evaluate_run
from .features import (
    DEFAULT_WINDOW_POINTS,
    FEATURE_COLUMNS,
    DeltaConfig,
    delta,
    extract_features,
    simple_diff,
)
from .matcher import dtw
from .protocol import ScoreSet, enroll, identify, run_all, run_verification_random, run_verification_skilled


def _fmt(value: float) -> str:
    return format(value, ".9g")


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        _write_atomic(Path(out), text)


def _odd_int(value: str) -> int:
    points = int(value)
    if points % 2 == 0:
        raise argparse.ArgumentTypeError(
            f"window of {points} points is invalid: derivative windows must be odd"
        )
    return points


def _odd_int_list(value: str) -> list[int]:
    return [_odd_int(item) for item in value.split(",") if item]


def _dcf_params(value: str) -> DcfParams:
    parts = value.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("--dcf needs c_miss,c_fa,p_target")
    try:
        return DcfParams(float(parts[0]), float(parts[1]), float(parts[2]))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sigdtw",
        description="Online signature recognition: derivative-window features + DTW.",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"sigdtw {__version__} (sig format v1)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a synthetic corpus on disk")
    p.add_argument("--out", required=True, help="corpus root directory")
    p.add_argument("--users", type=int, default=10)
    p.add_argument("--genuine", type=int, default=10)
    p.add_argument("--skilled", type=int, default=10)
    p.add_argument("--seed", type=int, default=42)

    p = sub.add_parser(
        "demo-signal", help="ramp+plateau demo sequence with both derivative estimates"
    )
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--window", type=_odd_int, default=15)
    p.add_argument("--out", help="CSV path (default: stdout)")

    p = sub.add_parser("extract", help="dump a signature's feature matrix as CSV")
    p.add_argument("signature", help=".sig file")
    p.add_argument("--window", type=_odd_int, default=DEFAULT_WINDOW_POINTS)
    p.add_argument("--out", help="CSV path (default: stdout)")

    p = sub.add_parser("match", help="DTW distance between two signatures")
    p.add_argument("first", help=".sig file (normalization side)")
    p.add_argument("second", help=".sig file")
    p.add_argument("--window", type=_odd_int, default=DEFAULT_WINDOW_POINTS)

    p = sub.add_parser("identify", help="identify a signature against corpus models")
    p.add_argument("signature", help=".sig file to identify")
    p.add_argument("--corpus", required=True)
    p.add_argument("--window", type=_odd_int, default=DEFAULT_WINDOW_POINTS)
    p.add_argument("--train-count", type=int, default=5)

    p = sub.add_parser("verify", help="run one verification protocol, write scores CSV")
    p.add_argument("--corpus", required=True)
    p.add_argument("--condition", choices=["random", "skilled"], required=True)
    p.add_argument("--window", type=_odd_int, default=DEFAULT_WINDOW_POINTS)
    p.add_argument("--train-count", type=int, default=5)
    p.add_argument("--test-count", type=int, default=5)
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--jobs", type=int, default=None)

    p = sub.add_parser("sweep", help="evaluate a list of derivative windows")
    p.add_argument("--corpus", required=True)
    p.add_argument(
        "--windows", type=_odd_int_list, default=[1, 3, 5, 7, 9, 11, 13, 15]
    )
    p.add_argument("--train-count", type=int, default=5)
    p.add_argument("--test-count", type=int, default=5)
    p.add_argument("--dcf", type=_dcf_params, default=DcfParams())
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--jobs", type=int, default=None)

    return parser


# ---------------------------------------------------------------------------
# CSV rendering

_REPORT_FIELDS = (
    "delta_points",
    "identification_rate",
    "min_dcf_random",
    "min_dcf_random_threshold",
    "min_dcf_skilled",
    "min_dcf_skilled_threshold",
    "eer_random",
    "eer_skilled",
    "n_trials",
    "n_genuine",
    "n_random_impostor",
    "n_skilled_impostor",
)


def _report_row(report) -> str:
    cells = []
    for name in _REPORT_FIELDS:
        value = getattr(report, name)
        cells.append(str(value) if isinstance(value, int) else _fmt(value))
    return ",".join(cells)


def _det_csv(curve) -> str:
    lines = ["threshold,p_fa,p_miss"]
    lines.extend(
        f"{_fmt(t)},{_fmt(fa)},{_fmt(miss)}"
        for t, fa, miss in zip(curve.thresholds, curve.p_fa, curve.p_miss)
    )
    return "\n".join(lines) + "\n"


def _scores_csv(scores: ScoreSet) -> str:
    lines = ["label,claimed_user,source_user,sample,score"]
    for s in scores.genuine:
        lines.append(f"genuine,{s.user_id},{s.user_id},{s.sample_index},{_fmt(s.score)}")
    for s in scores.impostor:
        lines.append(
            f"impostor,{s.claimed_user_id},{s.source_user_id},{s.sample_index},{_fmt(s.score)}"
        )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# subcommands

def _cmd_synth(args) -> int:
    manifest = generate_corpus(args.users, args.genuine, args.skilled, args.seed)
    written = write_corpus(manifest, args.out)
    print(f"wrote {len(written)} signatures for {args.users} users under {args.out}")
    return 0


def _cmd_demo_signal(args) -> int:
    signal = demo_signal(args.seed)
    wide = delta(signal, DeltaConfig(points=args.window))
    diff = simple_diff(signal)
    lines = ["x,simple_diff,delta"]
    lines.extend(
        f"{_fmt(x)},{_fmt(d)},{_fmt(w)}" for x, d, w in zip(signal, diff, wide)
    )
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_extract(args) -> int:
    sig = parse_signature(Path(args.signature).read_bytes())
    feats = extract_features(sig, DeltaConfig(points=args.window))
    lines = [",".join(FEATURE_COLUMNS)]
    lines.extend(",".join(_fmt(v) for v in row) for row in feats.rows)
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_match(args) -> int:
    cfg = DeltaConfig(points=args.window)
    a = extract_features(parse_signature(Path(args.first).read_bytes()), cfg)
    b = extract_features(parse_signature(Path(args.second).read_bytes()), cfg)
    result = dtw(a, b)
    print(f"accumulated {_fmt(result.accumulated)}")
    print(f"normalized {_fmt(result.normalized)}")
    return 0


def _cmd_identify(args) -> int:
    corpus = load_corpus(args.corpus)
    cfg = DeltaConfig(points=args.window)
    models = [enroll(corpus, uid, cfg, args.train_count) for uid in corpus.user_ids]
    test = extract_features(parse_signature(Path(args.signature).read_bytes()), cfg)
    user, distance = identify(models, test)
    print(f"user {user} distance {_fmt(distance)}")
    return 0


def _cmd_verify(args) -> int:
    corpus = load_corpus(args.corpus)
    cfg = DeltaConfig(points=args.window)
    runner = (
        run_verification_random
        if args.condition == "random"
        else run_verification_skilled
    )
    scores = runner(corpus, cfg, args.train_count, args.test_count, args.jobs)
    path = Path(args.out) / f"scores_{args.condition}_P{args.window}.csv"
    _write_atomic(path, _scores_csv(scores))
    print(
        f"wrote {path} ({len(scores.genuine)} genuine, {len(scores.impostor)} impostor)"
    )
    return 0


def _cmd_sweep(args) -> int:
    corpus = load_corpus(args.corpus)
    out = Path(args.out)
    header = ",".join(_REPORT_FIELDS)
    summary = [header]
    for points in args.windows:
        cfg = DeltaConfig(points=points)
        run = run_all(corpus, cfg, args.train_count, args.test_count, args.jobs)
        report = evaluate_run(
            run.trials, run.random_scores, run.skilled_scores, args.dcf, points
        )
        _write_atomic(out / f"report_P{points}.csv", f"{header}\n{_report_row(report)}\n")
        _write_atomic(out / f"det_random_P{points}.csv", _det_csv(det_points(run.random_scores)))
        _write_atomic(out / f"det_skilled_P{points}.csv", _det_csv(det_points(run.skilled_scores)))
        summary.append(_report_row(report))
        print(
            f"P={points}: identification {_fmt(report.identification_rate)}, "
            f"minDCF random {_fmt(report.min_dcf_random)}, "
            f"skilled {_fmt(report.min_dcf_skilled)}"
        )
    _write_atomic(out / "sweep_summary.csv", "\n".join(summary) + "\n")
    return 0


_COMMANDS = {
    "synth": _cmd_synth,
    "demo-signal": _cmd_demo_signal,
    "extract": _cmd_extract,
    "match": _cmd_match,
    "identify": _cmd_identify,
    "verify": _cmd_verify,
    "sweep": _cmd_sweep,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage problems and 0 for --help/--version
        return 0 if exc.code == 0 else 1
    try:
        return _COMMANDS[args.command](args)
    except (SignatureFormatError, CorpusError, ValueError, OSError) as exc:
        print(f"sigdtw: error: {exc}", file=sys.stderr)
        return 2


def console_entry() -> None:
    sys.exit(main())
