"""Recognition metrics: identification rate, DET curve, min DCF, EER, sweep.

Scores follow the convention "higher is more genuine" (they are negated
distances); a trial is accepted when its score is >= the threshold.  The DET
curve sweeps the threshold over every distinct observed score plus -inf/+inf
sentinels, which is exhaustive because false-acceptance and miss rates are
piecewise constant between observed scores.  The detection cost function
weighs miss and false-acceptance probabilities with configurable costs and
target prior; its cost values follow the speaker-detection convention and are
deliberately configurable since relative comparisons between derivative
windows, not absolute costs, are the reproducible quantity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import CorpusManifest
from .features import DeltaConfig
from .protocol import IdentificationTrial, ScoreSet, run_all


@dataclass(frozen=True)
class DcfParams:
    """Detection cost function weights: miss cost, false-alarm cost, prior."""

    c_miss: float = 10.0
    c_fa: float = 1.0
    p_target: float = 0.01

    def __post_init__(self):
        if self.c_miss <= 0 or self.c_fa <= 0:
            raise ValueError("costs must be positive")
        if not 0.0 < self.p_target < 1.0:
            raise ValueError("p_target must lie in (0, 1)")


@dataclass(eq=False)
class DetCurve:
    """False-acceptance / miss probabilities over an increasing threshold sweep."""

    thresholds: np.ndarray
    p_fa: np.ndarray
    p_miss: np.ndarray

    @property
    def points(self) -> list[tuple[float, float, float]]:
        return list(zip(self.thresholds, self.p_fa, self.p_miss))


@dataclass(eq=False)
class EvalReport:
    """All metrics of one window setting, for the sweep's summary rows."""

    delta_points: int
    identification_rate: float
    min_dcf_random: float
    min_dcf_random_threshold: float
    min_dcf_skilled: float
    min_dcf_skilled_threshold: float
    eer_random: float
    eer_skilled: float
    n_trials: int
    n_genuine: int
    n_random_impostor: int
    n_skilled_impostor: int
    skipped_skilled_users: tuple[int, ...] = ()


def identification_rate(trials: list[IdentificationTrial]) -> float:
    """Fraction of identification trials that predicted the true user."""
    if not trials:
        raise ValueError("no trials")
    correct = sum(1 for t in trials if t.predicted_user == t.true_user)
    return correct / len(trials)


def _score_arrays(scores: ScoreSet) -> tuple[np.ndarray, np.ndarray]:
    genuine = np.array([s.score for s in scores.genuine], dtype=float)
    impostor = np.array([s.score for s in scores.impostor], dtype=float)
    if genuine.size == 0 or impostor.size == 0:
        raise ValueError("both score populations must be non-empty")
    if not (np.isfinite(genuine).all() and np.isfinite(impostor).all()):
        raise ValueError("scores must be finite")
    return genuine, impostor


def det_points(scores: ScoreSet) -> DetCurve:
    """DET sweep: for each threshold, P(impostor accepted) and P(genuine missed).

    Thresholds are the distinct score values plus sentinels below and above
    all scores; accept means score >= threshold.
    """
    genuine, impostor = _score_arrays(scores)
    genuine.sort()
    impostor.sort()
    thresholds = np.concatenate(
        [[-np.inf], np.unique(np.concatenate([genuine, impostor])), [np.inf]]
    )
    p_miss = np.searchsorted(genuine, thresholds, side="left") / genuine.size
    p_fa = (impostor.size - np.searchsorted(impostor, thresholds, side="left")) / impostor.size
    return DetCurve(thresholds=thresholds, p_fa=p_fa, p_miss=p_miss)


def dcf_values(curve: DetCurve, params: DcfParams) -> np.ndarray:
    """Detection cost at every sweep threshold."""
    return (
        params.c_miss * curve.p_miss * params.p_target
        + params.c_fa * curve.p_fa * (1.0 - params.p_target)
    )


def min_dcf(scores: ScoreSet, params: DcfParams = DcfParams()) -> tuple[float, float]:
    """Minimum detection cost over the sweep, with the smallest threshold attaining it."""
    curve = det_points(scores)
    costs = dcf_values(curve, params)
    i = int(np.argmin(costs))  # first minimum = smallest threshold
    return float(costs[i]), float(curve.thresholds[i])


def eer(scores: ScoreSet) -> float:
    """Equal error rate: (p_fa + p_miss)/2 at the sweep point where they are closest."""
    curve = det_points(scores)
    i = int(np.argmin(np.abs(curve.p_fa - curve.p_miss)))
    return float((curve.p_fa[i] + curve.p_miss[i]) / 2.0)


def evaluate_run(
    trials: list[IdentificationTrial],
    random_scores: ScoreSet,
    skilled_scores: ScoreSet,
    params: DcfParams,
    points: int,
) -> EvalReport:
    """Assemble an EvalReport from one protocol run's outputs."""
    dcf_r, thr_r = min_dcf(random_scores, params)
    dcf_s, thr_s = min_dcf(skilled_scores, params)
    return EvalReport(
        delta_points=points,
        identification_rate=identification_rate(trials),
        min_dcf_random=dcf_r,
        min_dcf_random_threshold=thr_r,
        min_dcf_skilled=dcf_s,
        min_dcf_skilled_threshold=thr_s,
        eer_random=eer(random_scores),
        eer_skilled=eer(skilled_scores),
        n_trials=len(trials),
        n_genuine=len(random_scores.genuine),
        n_random_impostor=len(random_scores.impostor),
        n_skilled_impostor=len(skilled_scores.impostor),
        skipped_skilled_users=skilled_scores.skipped_users,
    )


def sweep(
    corpus: CorpusManifest,
    windows: list[int],
    params: DcfParams = DcfParams(),
    train_count: int = 5,
    test_count: int = 5,
    jobs: int | None = None,
) -> list[EvalReport]:
    """Evaluate every derivative window length on one corpus.

    Per window, feature extraction runs once and is shared by identification
    and both verification protocols.
    """
    if not windows:
        raise ValueError("windows must be non-empty")
    reports = []
    for points in windows:
        cfg = DeltaConfig(points=points)  # rejects even windows
        run = run_all(corpus, cfg, train_count, test_count, jobs)
        reports.append(
            evaluate_run(run.trials, run.random_scores, run.skilled_scores, params, points)
        )
    return reports
