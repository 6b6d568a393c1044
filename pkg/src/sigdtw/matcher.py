"""Dynamic time warping distance between feature sequences.

Local cost is the Euclidean norm of a row difference; the accumulated cost
follows the classic unconstrained recurrence with steps (1,0), (0,1), (1,1),
an infinite first row/column and a zero origin.  The reported distance is
additionally normalized by the first input's length so users with shorter
signatures do not get systematically smaller distances.  A brute-force
alignment-enumeration oracle is included for testing the kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numba
import numpy as np

if TYPE_CHECKING:
    from .features import FeatureMatrix
    from .protocol import UserModel

#: dtw_oracle enumerates every alignment path; larger inputs blow up
ORACLE_MAX_ROWS = 10


@dataclass(frozen=True)
class DtwResult:
    accumulated: float
    normalized: float


def _as_matrix(x) -> np.ndarray:
    rows = getattr(x, "rows", x)
    arr = np.ascontiguousarray(rows, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.shape[0] == 0:
        raise ValueError("input must be a non-empty L x D matrix")
    return arr


@numba.njit(cache=True, nogil=True)
def _accumulate(a, b):  # pragma: no cover - exercised via dtw()
    n, m = a.shape[0], b.shape[0]
    d = a.shape[1]
    prev = np.full(m + 1, np.inf)
    cur = np.empty(m + 1)
    prev[0] = 0.0
    for i in range(n):
        cur[0] = np.inf
        for j in range(m):
            s = 0.0
            for k in range(d):
                diff = a[i, k] - b[j, k]
                s += diff * diff
            best = prev[j]  # diagonal
            if prev[j + 1] < best:  # vertical
                best = prev[j + 1]
            if cur[j] < best:  # horizontal
                best = cur[j]
            cur[j + 1] = np.sqrt(s) + best
        prev, cur = cur, prev
    return prev[m]


def dtw(a, b) -> DtwResult:
    """DTW distance between two L x D matrices (or FeatureMatrix inputs).

    ``normalized`` divides the accumulated cost by the first input's row
    count; pass the enrolled template first so its length does the
    normalizing.
    """
    am, bm = _as_matrix(a), _as_matrix(b)
    if am.shape[1] != bm.shape[1]:
        raise ValueError(
            f"column counts differ: {am.shape[1]} vs {bm.shape[1]}"
        )
    accumulated = float(_accumulate(am, bm))
    return DtwResult(accumulated=accumulated, normalized=accumulated / am.shape[0])


def dtw_oracle(a, b) -> float:
    """Minimum summed cost over all monotonic alignment paths, by enumeration.

    Exponential in the input lengths; guarded to ORACLE_MAX_ROWS rows.  Used
    to cross-check the dynamic-programming kernel on small inputs.
    """
    am, bm = _as_matrix(a), _as_matrix(b)
    if am.shape[1] != bm.shape[1]:
        raise ValueError("column counts differ")
    n, m = am.shape[0], bm.shape[0]
    if n > ORACLE_MAX_ROWS or m > ORACLE_MAX_ROWS:
        raise ValueError(f"oracle limited to {ORACLE_MAX_ROWS} rows per input")
    cost = np.sqrt(((am[:, None, :] - bm[None, :, :]) ** 2).sum(axis=-1))

    best = [np.inf]

    def walk(i: int, j: int, acc: float) -> None:
        acc += cost[i, j]
        if i == n - 1 and j == m - 1:
            if acc < best[0]:
                best[0] = acc
            return
        if i + 1 < n and j + 1 < m:
            walk(i + 1, j + 1, acc)
        if i + 1 < n:
            walk(i + 1, j, acc)
        if j + 1 < m:
            walk(i, j + 1, acc)

    walk(0, 0, 0.0)
    return float(best[0])


def model_distance(model: "UserModel", test: "FeatureMatrix") -> float:
    """Distance from an enrolled model to a test feature matrix.

    Minimum over the model's templates of the template-normalized DTW
    distance (template passed first, so each user's scores are normalized by
    that user's own template lengths).
    """
    if not model.templates:
        raise ValueError("model holds no templates")
    return min(dtw(template, test).normalized for template in model.templates)
