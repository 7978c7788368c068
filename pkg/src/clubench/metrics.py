"""External cluster validity measures on confusion matrices.

The headline measure is the normalized clustering accuracy: the best
permutation matching of predicted to reference clusters, scored as the mean
per-reference-cluster accuracy rescaled so a perfectly uniform assignment
gets 0 and a perfect one gets 1.  It is computed in exact rational
arithmetic (row weights scaled by the lcm of the row sums) with one float
rounding at the very end, which makes the score bitwise invariant to
relabelling of either side.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import fsum, lcm, log

import numpy as np

from . import assignment
from .errors import EmptyRow, InvariantError, LabelError, LengthMismatch, NotSquare, TooFewPoints

MetricId = str
METRIC_IDS = ("nca", "adjusted_rand", "nmi")


@dataclass(frozen=True)
class ConfusionMatrix:
    """Counts c[i][j]: points of reference cluster i+1 put in predicted cluster j+1."""

    counts: np.ndarray

    def __post_init__(self):
        counts = np.asarray(self.counts)
        if counts.ndim != 2 or counts.size == 0:
            raise InvariantError(f"counts must be a 2-d matrix, got shape {counts.shape}")
        if not np.issubdtype(counts.dtype, np.integer):
            if not (np.asarray(counts == np.floor(counts)).all() and np.isfinite(counts).all()):
                raise InvariantError("counts must be integers")
        counts = counts.astype(np.int64)
        if (counts < 0).any():
            raise InvariantError("counts must be nonnegative")
        if counts.sum() < 1:
            raise InvariantError("a confusion matrix must count at least one point")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    @property
    def row_sums(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def col_sums(self) -> np.ndarray:
        return self.counts.sum(axis=0)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def shape(self) -> tuple[int, int]:
        return self.counts.shape


def _contiguous_1k(vec: np.ndarray, what: str) -> int:
    """Validate values are exactly {1..k} with none missing; return k."""
    if vec.min() < 1:
        raise LabelError(f"{what}: labels must be >= 1 (noise is filtered upstream)")
    k = int(vec.max())
    present = np.bincount(vec, minlength=k + 1)[1:]
    if (present == 0).any():
        gap = int(np.nonzero(present == 0)[0][0]) + 1
        raise LabelError(f"{what}: cluster id {gap} missing, labels must cover 1..{k}")
    return k


def confusion_matrix(y_ref, y_pred, n_pred_clusters: int | None = None) -> ConfusionMatrix:
    """Cross-tabulate two label vectors with values 1..k.

    When n_pred_clusters is given, predicted labels only need to lie in
    1..n_pred_clusters (clusters emptied by noise filtering keep their
    column); otherwise they must be contiguous.
    """
    y_ref = np.asarray(y_ref, dtype=np.int64)
    y_pred = np.asarray(y_pred, dtype=np.int64)
    if y_ref.shape != y_pred.shape or y_ref.ndim != 1:
        raise LengthMismatch(f"label vectors disagree: {y_ref.shape} vs {y_pred.shape}")
    if y_ref.size == 0:
        raise LengthMismatch("label vectors are empty")
    k_ref = _contiguous_1k(y_ref, "reference")
    if n_pred_clusters is None:
        k_pred = _contiguous_1k(y_pred, "prediction")
    else:
        k_pred = int(n_pred_clusters)
        if y_pred.min() < 1 or y_pred.max() > k_pred:
            raise LabelError(f"prediction: labels must lie in 1..{k_pred}")
    counts = np.bincount(
        (y_ref - 1) * k_pred + (y_pred - 1), minlength=k_ref * k_pred
    ).reshape(k_ref, k_pred)
    return ConfusionMatrix(counts)


def nca(C: ConfusionMatrix) -> float:
    """Normalized clustering accuracy of a square confusion matrix.

    max over permutations sigma of the mean over columns j of
    (c[sigma(j)][j] - c[sigma(j)][.]/k) / (c[sigma(j)][.] - c[sigma(j)][.]/k),
    which equals (W - 1)/(k - 1) for W the optimal total of the row-normalized
    matrix.  Range [-1/(k-1), 1]; exactly 1 iff some permutation is diagonal.
    """
    counts = C.counts
    k_ref, k_pred = counts.shape
    if k_ref != k_pred:
        raise NotSquare(f"nca needs a square matrix, got {k_ref} x {k_pred}")
    k = k_ref
    if k < 2:
        raise InvariantError("nca needs at least 2 clusters")
    row_sums = [int(s) for s in C.row_sums]
    if min(row_sums) == 0:
        raise EmptyRow("every reference cluster must keep at least one point")
    # Exact arithmetic: scale row i by L / row_sum[i] so weights are integers.
    L = lcm(*row_sums)
    scaled = [
        [int(counts[i, j]) * (L // row_sums[i]) for j in range(k)] for i in range(k)
    ]
    _, best = assignment.solve_value(scaled)
    return float(Fraction(best - L, L * (k - 1)))


def adjusted_rand(C: ConfusionMatrix) -> float:
    """Adjusted Rand index (Hubert-Arabie), exact rational arithmetic.

    Accepts rectangular matrices.  Returns 0 for the degenerate case where
    the expected and maximum index coincide.
    """
    n = C.total
    if n < 2:
        raise TooFewPoints("adjusted Rand needs at least 2 points")

    def comb2(x: int) -> int:
        return x * (x - 1) // 2

    s = sum(comb2(int(c)) for c in C.counts.flat)
    a = sum(comb2(int(c)) for c in C.row_sums)
    b = sum(comb2(int(c)) for c in C.col_sums)
    expected = Fraction(a * b, comb2(n))
    maximum = Fraction(a + b, 2)
    if maximum == expected:
        return 0.0
    return float((s - expected) / (maximum - expected))


def normalized_mutual_info(C: ConfusionMatrix) -> float:
    """Mutual information over the larger marginal entropy (natural log).

    0 log 0 is taken as 0; two zero-entropy (single-cluster) marginals give 1.
    Terms are accumulated with fsum so the value is independent of row and
    column order.
    """
    counts = C.counts
    n = C.total
    rows = [int(v) for v in C.row_sums]
    cols = [int(v) for v in C.col_sums]
    # entropies in log(n/r) form: identical partitions then reproduce the
    # mutual-information terms bit for bit, so NMI is exactly 1.0
    h_ref = fsum((r / n) * log(n / r) for r in rows if r > 0)
    h_pred = fsum((c / n) * log(n / c) for c in cols if c > 0)
    denom = max(h_ref, h_pred)
    if denom == 0.0:
        return 1.0
    mi = fsum(
        (int(c) / n) * log((int(c) * n) / (rows[i] * cols[j]))
        for (i, j), c in np.ndenumerate(counts)
        if c > 0
    )
    return mi / denom


METRICS = {
    "nca": nca,
    "adjusted_rand": adjusted_rand,
    "nmi": normalized_mutual_info,
}


def resolve_metric(metric: MetricId):
    try:
        return METRICS[metric]
    except KeyError:
        raise InvariantError(f"unknown metric {metric!r}; choose from {METRIC_IDS}") from None
