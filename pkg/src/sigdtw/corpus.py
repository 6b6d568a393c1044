"""Signature data model, on-disk format, corpus loading and synthetic generation.

A signature is a pen trajectory sampled on a digitizing tablet: five integer
channels (x, y, pressure, azimuth, altitude) plus a sample index.  Corpora are
directories of ``.sig`` text files grouped per user, each user holding a set
of genuine signatures and a set of skilled forgeries.  Because the reference
database this layout mirrors is license-restricted, the module also ships a
seeded generator that synthesizes corpora with the same structure: per-user
base shapes, genuine repetitions with small jitter, and forgeries that copy
the shape while altering timing and pressure dynamics.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import BinaryIO, Iterable, Literal

import numpy as np
from scipy.interpolate import CubicSpline

FORMAT_VERSION = "v1"

KIND_GENUINE = "genuine"
KIND_SKILLED = "skilled"
Kind = Literal["genuine", "skilled"]

#: channel -> (low, high), inclusive tablet ranges
CHANNEL_RANGES = {
    "x": (0, 12700),
    "y": (0, 9700),
    "p": (0, 1024),
    "az": (0, 3600),
    "al": (300, 900),
}

#: column order of Signature.samples rows
SAMPLE_COLUMNS = ("t", "x", "y", "p", "az", "al")


class SignatureFormatError(ValueError):
    """Raised when a .sig stream does not follow the canonical format."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CorpusError(ValueError):
    """Raised for corpus-level problems (layout, duplicates, mismatches)."""


@dataclass(frozen=True)
class Sample:
    """One tablet sample: index t plus the five measured channels."""

    t: int
    x: int
    y: int
    p: int
    az: int
    al: int

    def as_row(self) -> np.ndarray:
        return np.array([self.t, self.x, self.y, self.p, self.az, self.al])


@dataclass(eq=False)
class Signature:
    """A captured (or synthesized) signature with user/sample metadata.

    ``samples`` is an (L, 6) array in SAMPLE_COLUMNS order.  Measured and
    synthetic data carry integer channel values inside CHANNEL_RANGES;
    derived in-memory signatures (e.g. rescaled copies used in invariance
    checks) may carry floats and skip the range constraint.
    """

    user_id: int
    sample_index: int
    kind: Kind
    forger_id: int | None
    sample_rate_hz: int
    samples: np.ndarray

    def __post_init__(self):
        self.samples = np.asarray(self.samples)
        if self.samples.ndim != 2 or self.samples.shape[1] != 6:
            raise ValueError("samples must be an (L, 6) array")
        if len(self.samples) < 2:
            raise ValueError("signature must hold at least 2 samples")
        if self.user_id < 1 or self.sample_index < 1:
            raise ValueError("user_id and sample_index must be positive")
        if self.sample_rate_hz < 1:
            raise ValueError("sample_rate_hz must be positive")
        t = self.samples[:, 0]
        if t[0] < 0 or np.any(np.diff(t) <= 0):
            raise ValueError("sample t values must be non-negative and strictly increasing")
        if self.kind == KIND_SKILLED:
            if self.forger_id is None:
                raise ValueError("skilled forgery requires a forger_id")
            if self.forger_id == self.user_id:
                raise ValueError("forger_id must differ from user_id")
        elif self.kind == KIND_GENUINE:
            if self.forger_id is not None:
                raise ValueError("genuine signature must not carry a forger_id")
        else:
            raise ValueError(f"unknown kind {self.kind!r}")

    def __len__(self) -> int:
        return len(self.samples)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Signature):
            return NotImplemented
        return (
            self.user_id == other.user_id
            and self.sample_index == other.sample_index
            and self.kind == other.kind
            and self.forger_id == other.forger_id
            and self.sample_rate_hz == other.sample_rate_hz
            and self.samples.shape == other.samples.shape
            and np.array_equal(self.samples, other.samples)
        )

    def channel(self, name: str) -> np.ndarray:
        """Return one channel (by SAMPLE_COLUMNS name) as a float array."""
        return self.samples[:, SAMPLE_COLUMNS.index(name)].astype(float)

    def sample(self, i: int) -> Sample:
        return Sample(*(int(v) for v in self.samples[i]))


@dataclass(eq=False)
class CorpusUser:
    user_id: int
    genuine: list[Signature] = field(default_factory=list)
    skilled: list[Signature] = field(default_factory=list)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CorpusUser):
            return NotImplemented
        return (
            self.user_id == other.user_id
            and self.genuine == other.genuine
            and self.skilled == other.skilled
        )


@dataclass(eq=False)
class CorpusManifest:
    """Every user of a corpus with its genuine and skilled-forgery sets."""

    users: list[CorpusUser]
    seed: int | None = None

    def __eq__(self, other) -> bool:
        if not isinstance(other, CorpusManifest):
            return NotImplemented
        return self.users == other.users

    @property
    def user_ids(self) -> list[int]:
        return [u.user_id for u in self.users]

    def user(self, user_id: int) -> CorpusUser:
        for u in self.users:
            if u.user_id == user_id:
                return u
        raise CorpusError(f"user {user_id} not in corpus")


# ---------------------------------------------------------------------------
# .sig serialization

_HEADER_RE = re.compile(
    r"#user (\d+) sample (\d+) kind (genuine|skilled) forger (\d+|-) rate (\d+)"
)


def _check_ranges(row: Iterable[int], line: int | None = None) -> None:
    t, x, y, p, az, al = row
    for name, value in (("x", x), ("y", y), ("p", p), ("az", az), ("al", al)):
        lo, hi = CHANNEL_RANGES[name]
        if not lo <= value <= hi:
            raise SignatureFormatError(
                f"channel {name} value {value} outside range [{lo}, {hi}]", line
            )


def parse_signature(data: bytes | str | BinaryIO) -> Signature:
    """Parse the canonical .sig text format into a Signature.

    Raises SignatureFormatError (with the offending line number) on a
    malformed header, non-monotonic t, out-of-range channel values or fewer
    than two samples.
    """
    if hasattr(data, "read"):
        data = data.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    lines = data.splitlines()

    if not lines or lines[0] != f"#sig {FORMAT_VERSION}":
        raise SignatureFormatError(f"expected '#sig {FORMAT_VERSION}' header", 1)
    if len(lines) < 2:
        raise SignatureFormatError("missing metadata header", 2)
    m = _HEADER_RE.fullmatch(lines[1])
    if m is None:
        raise SignatureFormatError(
            "expected '#user <int> sample <int> kind <genuine|skilled> "
            "forger <int|-> rate <int>'",
            2,
        )
    user_id = int(m.group(1))
    sample_index = int(m.group(2))
    kind = m.group(3)
    forger_id = None if m.group(4) == "-" else int(m.group(4))
    rate = int(m.group(5))
    if user_id < 1 or sample_index < 1 or rate < 1:
        raise SignatureFormatError("user, sample and rate must be positive", 2)
    if kind == KIND_GENUINE and forger_id is not None:
        raise SignatureFormatError("genuine signature must have 'forger -'", 2)
    if kind == KIND_SKILLED and forger_id is None:
        raise SignatureFormatError("skilled forgery requires an integer forger id", 2)
    if kind == KIND_SKILLED and forger_id == user_id:
        raise SignatureFormatError("forger must differ from the signature's user", 2)

    rows = []
    prev_t = -1
    for lineno, line in enumerate(lines[2:], start=3):
        fields = line.split()
        if len(fields) != 6:
            raise SignatureFormatError("expected 6 integer fields", lineno)
        try:
            row = [int(f) for f in fields]
        except ValueError:
            raise SignatureFormatError("expected 6 integer fields", lineno) from None
        if row[0] < 0:
            raise SignatureFormatError("t must be non-negative", lineno)
        if row[0] <= prev_t:
            raise SignatureFormatError(
                f"t value {row[0]} not greater than previous {prev_t}", lineno
            )
        prev_t = row[0]
        _check_ranges(row, lineno)
        rows.append(row)

    if len(rows) < 2:
        raise SignatureFormatError(
            f"signature has {len(rows)} samples, need at least 2", len(lines) + 1
        )
    try:
        return Signature(
            user_id=user_id,
            sample_index=sample_index,
            kind=kind,
            forger_id=forger_id,
            sample_rate_hz=rate,
            samples=np.array(rows, dtype=np.int64),
        )
    except ValueError as exc:
        raise SignatureFormatError(str(exc)) from None


def write_signature(sig: Signature) -> bytes:
    """Serialize a Signature to canonical .sig bytes (parse's left inverse)."""
    if not np.issubdtype(sig.samples.dtype, np.integer):
        raise ValueError("only integer-channel signatures can be serialized")
    forger = "-" if sig.forger_id is None else str(sig.forger_id)
    out = [
        f"#sig {FORMAT_VERSION}",
        f"#user {sig.user_id} sample {sig.sample_index} kind {sig.kind} "
        f"forger {forger} rate {sig.sample_rate_hz}",
    ]
    out.extend(" ".join(str(int(v)) for v in row) for row in sig.samples)
    return ("\n".join(out) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# corpus layout

_USER_DIR_RE = re.compile(r"u(\d+)")
_SIG_FILE_RE = re.compile(r"(genuine|skilled)(\d+)\.sig")


def signature_filename(sig: Signature) -> str:
    return f"{sig.kind}{sig.sample_index:03d}.sig"


def write_corpus(manifest: CorpusManifest, root: str | Path) -> list[Path]:
    """Write every signature under ``<root>/u<user>/<kind><index>.sig``."""
    root = Path(root)
    written = []
    for user in manifest.users:
        user_dir = root / f"u{user.user_id:03d}"
        user_dir.mkdir(parents=True, exist_ok=True)
        for sig in [*user.genuine, *user.skilled]:
            path = user_dir / signature_filename(sig)
            path.write_bytes(write_signature(sig))
            written.append(path)
    return written


def _parse_file(path: Path) -> Signature:
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise CorpusError(f"unreadable file {path}: {exc}") from exc
    try:
        return parse_signature(raw)
    except SignatureFormatError as exc:
        raise CorpusError(f"{path}: {exc}") from exc


def _load_from_layout(root: Path) -> CorpusManifest:
    users = []
    seen: set[tuple[int, int, str]] = set()
    for user_dir in sorted(root.iterdir()):
        if not user_dir.is_dir():
            continue
        m = _USER_DIR_RE.fullmatch(user_dir.name)
        if m is None:
            continue
        dir_user = int(m.group(1))
        user = CorpusUser(user_id=dir_user)
        entries = []
        for path in user_dir.iterdir():
            fm = _SIG_FILE_RE.fullmatch(path.name)
            if fm is not None:
                entries.append((fm.group(1), int(fm.group(2)), path))
        for kind, index, path in sorted(entries, key=lambda e: (e[0], e[1])):
            sig = _parse_file(path)
            if sig.user_id != dir_user:
                raise CorpusError(
                    f"{path}: embedded user {sig.user_id} does not match directory u{dir_user}"
                )
            if (sig.kind, sig.sample_index) != (kind, index):
                raise CorpusError(
                    f"{path}: embedded kind/sample {sig.kind}/{sig.sample_index} "
                    f"does not match file name"
                )
            key = (sig.user_id, sig.sample_index, sig.kind)
            if key in seen:
                raise CorpusError(f"duplicate signature {key} at {path}")
            seen.add(key)
            (user.genuine if kind == KIND_GENUINE else user.skilled).append(sig)
        if user.genuine or user.skilled:
            users.append(user)
    if not users:
        raise CorpusError(f"no users found under {root}")
    users.sort(key=lambda u: u.user_id)
    return CorpusManifest(users=users)


def _load_from_index(index_path: Path) -> CorpusManifest:
    base = index_path.parent
    by_user: dict[int, CorpusUser] = {}
    seen: set[tuple[int, int, str]] = set()
    with open(index_path, newline="") as fh:
        reader = csv.DictReader(fh)
        required = {"path", "user", "sample", "kind", "forger"}
        if reader.fieldnames is None or not required.issubset(reader.fieldnames):
            raise CorpusError(
                f"{index_path}: index must have columns path,user,sample,kind,forger"
            )
        for row in reader:
            path = base / row["path"]
            sig = _parse_file(path)
            expect_forger = None if row["forger"] in ("-", "") else int(row["forger"])
            if (
                sig.user_id != int(row["user"])
                or sig.sample_index != int(row["sample"])
                or sig.kind != row["kind"]
                or sig.forger_id != expect_forger
            ):
                raise CorpusError(f"{path}: embedded metadata does not match index row")
            key = (sig.user_id, sig.sample_index, sig.kind)
            if key in seen:
                raise CorpusError(f"duplicate signature {key} at {path}")
            seen.add(key)
            user = by_user.setdefault(sig.user_id, CorpusUser(user_id=sig.user_id))
            (user.genuine if sig.kind == KIND_GENUINE else user.skilled).append(sig)
    if not by_user:
        raise CorpusError(f"no users found in {index_path}")
    users = sorted(by_user.values(), key=lambda u: u.user_id)
    for user in users:
        user.genuine.sort(key=lambda s: s.sample_index)
        user.skilled.sort(key=lambda s: s.sample_index)
    return CorpusManifest(users=users)


def load_corpus(root: str | Path) -> CorpusManifest:
    """Load a corpus from a layout directory or an index.csv file."""
    root = Path(root)
    if root.is_file():
        return _load_from_index(root)
    if root.is_dir():
        has_user_dirs = any(
            p.is_dir() and _USER_DIR_RE.fullmatch(p.name) for p in root.iterdir()
        )
        if has_user_dirs:
            return _load_from_layout(root)
        index = root / "index.csv"
        if index.is_file():
            return _load_from_index(index)
        raise CorpusError(f"no users found under {root}")
    raise CorpusError(f"corpus path {root} does not exist")


# ---------------------------------------------------------------------------
# synthetic corpus generation
#
# Calibration constants.  _NOISE_XY / _NOISE_P set the per-sample channel
# noise that makes one-sample-difference derivatives unreliable while leaving
# wide-window regression derivatives informative; the shape/timing/pressure
# constants set intra-user variability and how strongly forgeries deviate in
# dynamics while copying the shape.  Calibrated so that, on seeded corpora,
# genuine-genuine distances sit below genuine-forgery below genuine-other and
# wide derivative windows measurably beat the one-sample difference.

_NOISE_XY = 80.0
_NOISE_P = 22.0
_SHAPE_JITTER_GENUINE = 0.020  # control-point jitter, fraction of shape extent
_SHAPE_JITTER_FORGED = 0.028
_TIMING_SD_GENUINE = 0.35
_TIMING_SD_FORGED = 0.85
_SCALE_SD_GENUINE = 0.05
_ROT_SD_GENUINE = 0.05
_SHIFT_SD_GENUINE = 130.0
_SCALE_SD_FORGED = 0.025
_ROT_SD_FORGED = 0.015
_SHIFT_SD_FORGED = 60.0
_PRESSURE_JITTER_GENUINE = 0.08
_DEFAULT_RATE_HZ = 100

_KIND_CODE = {KIND_GENUINE: 0, KIND_SKILLED: 1}


def _rng(seed: int, user_id: int, sample_index: int, kind: Kind) -> np.random.Generator:
    entropy = (seed % (2**63), user_id, sample_index, _KIND_CODE[kind])
    return np.random.default_rng(np.random.SeedSequence(entropy))


@dataclass
class _UserStyle:
    control_points: np.ndarray  # (K, 2) base shape in tablet units
    knots: np.ndarray  # (K,) chord-length spline parameter
    extent: float  # shape diagonal, scales the per-signature jitter
    base_length: int
    stroke_spans: list[tuple[float, float]]  # parameter intervals carrying ink
    pressure_peaks: np.ndarray
    az_center: float
    al_center: float

    @property
    def centroid(self) -> np.ndarray:
        return self.control_points.mean(axis=0)


def _user_style(seed: int, user_id: int) -> _UserStyle:
    """Base shape and writing style for one synthetic user.

    The shape is a smooth spline through a momentum random walk, drifting
    rightwards like handwriting; strokes are parameter spans separated by
    pen-up gaps where pressure collapses.
    """
    rng = _rng(seed, user_id, 0, KIND_GENUINE)
    n_ctrl = int(rng.integers(8, 11))

    steps = rng.normal(size=(n_ctrl - 1, 2))
    steps[:, 0] = 0.8 * steps[:, 0] + 1.0  # drift rightwards
    steps[:, 1] *= 1.3
    pts = np.vstack([[0.0, 0.0], np.cumsum(steps, axis=0)])

    width = rng.uniform(5600.0, 7400.0)
    height = rng.uniform(2600.0, 3800.0)
    x0 = rng.uniform(1800.0, 12700.0 - width - 1800.0)
    y0 = rng.uniform(1600.0, 9700.0 - height - 1600.0)
    for axis, (lo, span) in enumerate(((x0, width), (y0, height))):
        col = pts[:, axis]
        extent = col.max() - col.min()
        if extent < 1e-9:
            col[:] = lo + span / 2.0
        else:
            pts[:, axis] = lo + (col - col.min()) / extent * span

    # chord-length parameterization keeps base speed roughly uniform
    chord = np.sqrt((np.diff(pts, axis=0) ** 2).sum(axis=1))
    u = np.concatenate([[0.0], np.cumsum(chord)])
    u /= u[-1]
    u = np.maximum.accumulate(u + np.arange(n_ctrl) * 1e-9)  # guard duplicate knots

    n_strokes = int(rng.integers(2, 5))
    cuts = np.sort(rng.uniform(0.18, 0.82, size=n_strokes - 1))
    gap_half = rng.uniform(0.012, 0.028, size=n_strokes - 1)
    bounds = [0.0, *cuts, 1.0]
    spans = []
    for i in range(n_strokes):
        lo = bounds[i] + (gap_half[i - 1] if i > 0 else 0.0)
        hi = bounds[i + 1] - (gap_half[i] if i < n_strokes - 1 else 0.0)
        spans.append((lo, hi))

    return _UserStyle(
        control_points=pts,
        knots=u,
        extent=float(np.hypot(width, height)),
        base_length=int(rng.integers(170, 231)),
        stroke_spans=spans,
        pressure_peaks=rng.uniform(520.0, 940.0, size=n_strokes),
        az_center=rng.uniform(800.0, 2800.0),
        al_center=rng.uniform(420.0, 780.0),
    )


def _smooth_noise(rng: np.random.Generator, length: int, knots: int, sd: float) -> np.ndarray:
    """Low-frequency noise: linear interpolation of seeded knot values."""
    values = rng.normal(0.0, sd, size=knots)
    return np.interp(np.linspace(0.0, 1.0, length), np.linspace(0.0, 1.0, knots), values)


def _time_grid(rng: np.random.Generator, length: int, timing_sd: float) -> np.ndarray:
    """Monotone parameter grid on [0, 1] with smoothly varying speed."""
    speed = np.exp(_smooth_noise(rng, length, knots=8, sd=timing_sd))
    s = np.concatenate([[0.0], np.cumsum(speed[:-1])])
    return s / s[-1]


def _pressure_profile(
    s: np.ndarray,
    spans: list[tuple[float, float]],
    peaks: np.ndarray,
    rng: np.random.Generator,
    amplitude_jitter: float,
) -> np.ndarray:
    p = rng.uniform(0.0, 18.0, size=len(s))  # pen-up: near-zero pressure
    for (lo, hi), peak in zip(spans, peaks):
        mask = (s >= lo) & (s <= hi)
        if not mask.any():
            continue
        rel = (s[mask] - lo) / max(hi - lo, 1e-9)
        arch = np.sin(np.pi * rel) ** 0.6
        p[mask] = peak * (1.0 + rng.normal(0.0, amplitude_jitter)) * np.clip(arch, 0.04, None)
    return p


def _render_signature(
    style: _UserStyle,
    rng: np.random.Generator,
    length: int,
    shape_jitter: float,
    timing_sd: float,
    scale_sd: float,
    rot_sd: float,
    shift_sd: float,
    peaks: np.ndarray,
    spans: list[tuple[float, float]],
    amplitude_jitter: float,
) -> np.ndarray:
    # no two executions trace the same curve: jitter the control points
    ctrl = style.control_points + rng.normal(
        0.0, shape_jitter * style.extent, size=style.control_points.shape
    )
    spline = CubicSpline(style.knots, ctrl, axis=0, bc_type="natural")
    s = _time_grid(rng, length, timing_sd)
    xy = spline(s)

    theta = rng.normal(0.0, rot_sd)
    scale = 1.0 + rng.normal(0.0, scale_sd, size=2)
    shift = rng.normal(0.0, shift_sd, size=2)
    rot = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
    xy = (xy - style.centroid) * scale @ rot.T + style.centroid + shift

    p = _pressure_profile(s, spans, peaks, rng, amplitude_jitter)
    az = style.az_center + _smooth_noise(rng, length, knots=10, sd=140.0)
    al = style.al_center + _smooth_noise(rng, length, knots=10, sd=70.0)

    xy += rng.normal(0.0, _NOISE_XY, size=xy.shape)
    p += rng.normal(0.0, _NOISE_P, size=length)

    out = np.empty((length, 6), dtype=np.int64)
    out[:, 0] = np.arange(length)
    out[:, 1] = np.clip(np.rint(xy[:, 0]), *CHANNEL_RANGES["x"])
    out[:, 2] = np.clip(np.rint(xy[:, 1]), *CHANNEL_RANGES["y"])
    out[:, 3] = np.clip(np.rint(p), *CHANNEL_RANGES["p"])
    out[:, 4] = np.clip(np.rint(az), *CHANNEL_RANGES["az"])
    out[:, 5] = np.clip(np.rint(al), *CHANNEL_RANGES["al"])
    return out


def _genuine_signature(seed: int, style: _UserStyle, user_id: int, index: int) -> Signature:
    rng = _rng(seed, user_id, index, KIND_GENUINE)
    length = style.base_length + int(rng.integers(-12, 13))
    samples = _render_signature(
        style,
        rng,
        length,
        shape_jitter=_SHAPE_JITTER_GENUINE,
        timing_sd=_TIMING_SD_GENUINE,
        scale_sd=_SCALE_SD_GENUINE,
        rot_sd=_ROT_SD_GENUINE,
        shift_sd=_SHIFT_SD_GENUINE,
        peaks=style.pressure_peaks,
        spans=style.stroke_spans,
        amplitude_jitter=_PRESSURE_JITTER_GENUINE,
    )
    return Signature(
        user_id=user_id,
        sample_index=index,
        kind=KIND_GENUINE,
        forger_id=None,
        sample_rate_hz=_DEFAULT_RATE_HZ,
        samples=samples,
    )


def _skilled_signature(
    seed: int, style: _UserStyle, user_id: int, index: int, forger_id: int
) -> Signature:
    # The forger copies the visible trace (shape and pen-up gaps) but supplies
    # their own dynamics: slower, unevenly timed, with a fresh pressure style.
    rng = _rng(seed, user_id, index, KIND_SKILLED)
    length = int(round(style.base_length * rng.uniform(1.05, 1.30)))
    peaks = rng.uniform(420.0, 980.0, size=len(style.stroke_spans))
    samples = _render_signature(
        style,
        rng,
        length,
        shape_jitter=_SHAPE_JITTER_FORGED,
        timing_sd=_TIMING_SD_FORGED,
        scale_sd=_SCALE_SD_FORGED,
        rot_sd=_ROT_SD_FORGED,
        shift_sd=_SHIFT_SD_FORGED,
        peaks=peaks,
        spans=style.stroke_spans,
        amplitude_jitter=_PRESSURE_JITTER_GENUINE * 2.0,
    )
    return Signature(
        user_id=user_id,
        sample_index=index,
        kind=KIND_SKILLED,
        forger_id=forger_id,
        sample_rate_hz=_DEFAULT_RATE_HZ,
        samples=samples,
    )


def generate_corpus(
    n_users: int, n_genuine: int, n_skilled: int, seed: int
) -> CorpusManifest:
    """Generate a deterministic synthetic corpus.

    Each signature is a pure function of (all arguments, seed): per-signature
    random streams are derived from (seed, user_id, sample_index, kind), so
    repeated calls produce byte-identical corpora.  Skilled forgeries of a
    user are attributed to the other users in rotation.
    """
    if n_users < 2:
        raise ValueError("need at least 2 users (forgers are other users)")
    if n_genuine < 1 or n_skilled < 0:
        raise ValueError("n_genuine must be >= 1 and n_skilled >= 0")
    users = []
    for user_id in range(1, n_users + 1):
        style = _user_style(seed, user_id)
        user = CorpusUser(user_id=user_id)
        for index in range(1, n_genuine + 1):
            user.genuine.append(_genuine_signature(seed, style, user_id, index))
        for index in range(1, n_skilled + 1):
            offset = 1 + (index - 1) % (n_users - 1)
            forger_id = (user_id - 1 + offset) % n_users + 1
            user.skilled.append(_skilled_signature(seed, style, user_id, index, forger_id))
        users.append(user)
    return CorpusManifest(users=users, seed=seed)


def demo_signal(seed: int, noise_amplitude: float = 1.0) -> np.ndarray:
    """Ramp-plus-plateau test signal with seeded uniform [0, 1) noise.

    200 samples rising 1..200 followed by 200 samples at 200.  Setting
    ``noise_amplitude`` to 0 exposes the noise-free skeleton for tests.
    """
    skeleton = np.concatenate([np.arange(1.0, 201.0), np.full(200, 200.0)])
    noise = np.random.default_rng(seed).random(400)
    return skeleton + noise_amplitude * noise
