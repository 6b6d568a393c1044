"""Feature extraction: centroid centering, windowed derivatives, z-scoring.

A signature's x/y/p channels are expanded into an 8-column feature matrix
[x, y, p, dx, dy, dp, ddx, ddy]: positions centered on their centroid, first
derivatives of all three channels, second derivatives of the positions, and
every column z-scored independently.  First derivatives come either from a
one-sample difference (window of 1 point) or from the slope of a least-squares
line fit over a sliding window of P = 2m+1 points, which is far more robust
to per-sample noise.  The pen-angle channels carry little discriminative
information and are dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .corpus import Signature

#: column order of FeatureMatrix.rows
FEATURE_COLUMNS = ("x", "y", "p", "dx", "dy", "dp", "ddx", "ddy")

#: recommended derivative window (see the sweep demo; wide windows resist noise)
DEFAULT_WINDOW_POINTS = 11

#: sample standard deviations below this are treated as zero variance
_DEGENERATE_STD = 1e-12


@dataclass(frozen=True)
class DeltaConfig:
    """Derivative estimator settings: an odd window length in samples.

    points == 1 selects the one-sample difference; points >= 3 selects the
    regression slope over a window of half-width (points - 1) // 2.
    """

    points: int

    def __post_init__(self):
        if self.points % 2 == 0:
            raise ValueError(f"window must be odd, got {self.points}")
        if not 1 <= self.points <= 31:
            raise ValueError(f"window must be in 1..31, got {self.points}")

    @property
    def half_width(self) -> int:
        return (self.points - 1) // 2


@dataclass(eq=False)
class FeatureMatrix:
    """L x 8 normalized feature sequence plus the source signature metadata."""

    user_id: int
    sample_index: int
    kind: str
    forger_id: int | None
    rows: np.ndarray
    delta_config: DeltaConfig
    degenerate_columns: frozenset[int] = field(default_factory=frozenset)

    def __len__(self) -> int:
        return len(self.rows)


def centroid_center(points: np.ndarray) -> np.ndarray:
    """Shift (x, y) pairs so their mean lands on the origin."""
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        raise ValueError("cannot center an empty point set")
    return pts - pts.mean(axis=0)


def delta_regression(signal: np.ndarray, half_width: int) -> np.ndarray:
    """Local slope of a least-squares line over a 2m+1 sliding window.

    The ends are replicate-padded by m samples so the output keeps the input
    length; the closed-form slope is sum(k * window[k]) / sum(k^2) for
    k = -m..m.
    """
    x = np.asarray(signal, dtype=float)
    if x.ndim != 1 or len(x) < 1:
        raise ValueError("signal must be a non-empty 1-D sequence")
    m = int(half_width)
    if m < 1:
        raise ValueError("half_width must be >= 1")
    padded = np.concatenate([np.repeat(x[0], m), x, np.repeat(x[-1], m)])
    weights = np.arange(-m, m + 1, dtype=float)
    denom = m * (m + 1) * (2 * m + 1) / 3.0
    return np.correlate(padded, weights, mode="valid") / denom


def simple_diff(signal: np.ndarray) -> np.ndarray:
    """One-sample difference with a leading zero to preserve length."""
    x = np.asarray(signal, dtype=float)
    if x.ndim != 1 or len(x) < 1:
        raise ValueError("signal must be a non-empty 1-D sequence")
    return np.diff(x, prepend=x[:1])


def delta(signal: np.ndarray, cfg: DeltaConfig) -> np.ndarray:
    """First derivative estimate: one-sample difference or regression slope."""
    if cfg.points == 1:
        return simple_diff(signal)
    return delta_regression(signal, cfg.half_width)


def delta_delta(signal: np.ndarray, cfg: DeltaConfig) -> np.ndarray:
    """Second derivative estimate: the first-derivative operator applied twice."""
    return delta(delta(signal, cfg), cfg)


def zscore(signal: np.ndarray) -> tuple[np.ndarray, bool]:
    """Normalize to zero mean and unit sample standard deviation.

    Zero-variance input maps to all zeros with the degenerate flag set, so a
    constant channel stays matchable instead of raising.
    """
    x = np.asarray(signal, dtype=float)
    if x.ndim != 1 or len(x) < 2:
        raise ValueError("z-score needs at least 2 samples")
    std = x.std(ddof=1)
    if std < _DEGENERATE_STD:
        return np.zeros_like(x), True
    return (x - x.mean()) / std, False


def extract_features(sig: Signature, cfg: DeltaConfig) -> FeatureMatrix:
    """Turn a Signature into its L x 8 normalized feature matrix.

    Pipeline order: centroid-center (x, y); derive dx, dy, dp and ddx, ddy
    with the configured window; z-score all 8 columns independently.  Pen
    angles are discarded.
    """
    if len(sig) < 2:
        raise ValueError("need at least 2 samples to extract features")
    xy = centroid_center(np.stack([sig.channel("x"), sig.channel("y")], axis=1))
    xc, yc = xy[:, 0], xy[:, 1]
    p = sig.channel("p")

    columns = [
        xc,
        yc,
        p,
        delta(xc, cfg),
        delta(yc, cfg),
        delta(p, cfg),
        delta_delta(xc, cfg),
        delta_delta(yc, cfg),
    ]
    rows = np.empty((len(sig), len(columns)))
    degenerate = set()
    for i, col in enumerate(columns):
        rows[:, i], is_degenerate = zscore(col)
        if is_degenerate:
            degenerate.add(i)

    return FeatureMatrix(
        user_id=sig.user_id,
        sample_index=sig.sample_index,
        kind=sig.kind,
        forger_id=sig.forger_id,
        rows=rows,
        delta_config=cfg,
        degenerate_columns=frozenset(degenerate),
    )
