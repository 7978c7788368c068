"""The evaluation contract: noise exclusion, k-matched comparison, and the
max-over-reference-labellings rule.

Noise points (reference label 0) are dropped before anything is counted, so
a prediction can place them anywhere without affecting any score.  Each
reference labelling with k clusters is compared against the stored
k-partition, and the best score over all labellings is reported.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .data import ReferenceLabelling
from .errors import AllNoise, InvariantError, KMismatch, LabelError, LengthMismatch, MissingK
from .metrics import MetricId, confusion_matrix, resolve_metric


@dataclass(frozen=True)
class PartitionSet:
    """Predicted partitions keyed by their cluster count k."""

    by_k: dict[int, np.ndarray]
    n: int = field(init=False)

    def __post_init__(self):
        if not self.by_k:
            raise InvariantError("a PartitionSet needs at least one partition")
        clean: dict[int, np.ndarray] = {}
        n = None
        for k in sorted(self.by_k):
            labels = np.asarray(self.by_k[k], dtype=np.int64)
            if labels.ndim != 1 or labels.size == 0:
                raise InvariantError(f"partition for k={k} must be a nonempty vector")
            if n is None:
                n = labels.shape[0]
            elif labels.shape[0] != n:
                raise InvariantError(
                    f"partition for k={k} has {labels.shape[0]} points, expected {n}"
                )
            if int(k) < 2:
                raise InvariantError(f"k must be >= 2, got {k}")
            _check_partition_labels(labels, int(k))
            labels = labels.copy()
            labels.setflags(write=False)
            clean[int(k)] = labels
        object.__setattr__(self, "by_k", clean)
        object.__setattr__(self, "n", int(n))

    def ks(self) -> list[int]:
        return sorted(self.by_k)

    def __getitem__(self, k: int) -> np.ndarray:
        try:
            return self.by_k[int(k)]
        except KeyError:
            raise MissingK(f"no stored partition for k={k}") from None

    def __contains__(self, k: int) -> bool:
        return int(k) in self.by_k

    def __eq__(self, other):
        if not isinstance(other, PartitionSet):
            return NotImplemented
        return self.by_k.keys() == other.by_k.keys() and all(
            np.array_equal(self.by_k[k], other.by_k[k]) for k in self.by_k
        )


def _check_partition_labels(labels: np.ndarray, k: int) -> None:
    """Predicted labels must be exactly {1..k} with every id present."""
    if labels.min() < 1:
        raise LabelError("predicted labels must be >= 1 (no predicted noise)")
    if labels.max() > k:
        raise LabelError(f"predicted label {int(labels.max())} exceeds k={k}")
    present = np.bincount(labels, minlength=k + 1)[1:]
    if (present == 0).any():
        gap = int(np.nonzero(present == 0)[0][0]) + 1
        raise LabelError(f"predicted cluster {gap} is empty, labels must cover 1..{k}")


def filter_noise(reference, y_pred) -> tuple[np.ndarray, np.ndarray]:
    """Restrict both vectors to the indices the reference does not mark as noise.

    reference may be a ReferenceLabelling or a raw integer vector.
    """
    y_pred = np.asarray(y_pred, dtype=np.int64)
    ref = (
        reference.labels
        if isinstance(reference, ReferenceLabelling)
        else np.asarray(reference, dtype=np.int64)
    )
    if y_pred.shape != ref.shape:
        raise LengthMismatch(f"prediction has {y_pred.shape[0]} labels for {ref.shape[0]} points")
    keep = ref != 0
    if not keep.any():
        raise AllNoise("every point is marked as noise; nothing to compare")
    return ref[keep], y_pred[keep]


def score_one(reference: ReferenceLabelling, y_pred, metric: MetricId = "nca") -> float:
    """Score one prediction against one reference labelling.

    The prediction must be a full partition into 1..k_pred; for nca, k_pred
    must equal the reference cluster count.  Noise indices are excluded,
    then predicted clusters keep their original column even if emptied.
    """
    fn = resolve_metric(metric)
    y_pred = np.asarray(y_pred, dtype=np.int64)
    if y_pred.shape != reference.labels.shape:
        raise LengthMismatch(
            f"prediction has {y_pred.shape[0]} labels for {reference.labels.shape[0]} points"
        )
    if y_pred.size and y_pred.min() >= 1:
        k_pred = int(y_pred.max())
        _check_partition_labels(y_pred, k_pred)
    else:
        raise LabelError("predicted labels must be a partition into 1..k (no zeros)")
    if metric == "nca" and k_pred != reference.n_clusters:
        raise KMismatch(
            f"nca needs k_pred = k_ref, got {k_pred} vs {reference.n_clusters}"
        )
    y_ref, y_kept = filter_noise(reference, y_pred)
    C = confusion_matrix(y_ref, y_kept, n_pred_clusters=k_pred)
    return fn(C)


def score_all(
    labellings, predictions: PartitionSet, metric: MetricId = "nca"
) -> list[tuple[int, float]]:
    """(k, score) for every reference labelling, in labelling order."""
    labellings = list(labellings)
    if not labellings:
        raise InvariantError("need at least one reference labelling")
    out = []
    for lab in labellings:
        y_pred = predictions[lab.n_clusters]
        out.append((lab.n_clusters, score_one(lab, y_pred, metric)))
    return out


def get_score(labellings, predictions: PartitionSet, metric: MetricId = "nca") -> float:
    """The maximal score over all reference labellings."""
    return max(score for _, score in score_all(labellings, predictions, metric))
