"""Built-in reference clusterers: k-means and agglomerative linkages.

Everything here is deterministic given its seed: k-means restart r draws
from a generator derived from (seed, r), winners are picked by (inertia,
restart index), merge ties follow the (min founder, max founder) rule, and
output labels are renumbered in first-occurrence order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from ._kernels_py import sqdist_to_point
from .errors import BadK, InvariantError, NonFinite
from .scoring import PartitionSet

LINKAGES = ("single", "complete", "average")


@dataclass(frozen=True)
class KMeansConfig:
    n_init: int = 10
    max_iter: int = 300
    tol: float = 1e-9
    seed: int = 0

    def __post_init__(self):
        if self.n_init < 1:
            raise InvariantError("n_init must be >= 1")
        if self.max_iter < 1:
            raise InvariantError("max_iter must be >= 1")
        if not (self.tol >= 0):
            raise InvariantError("tol must be >= 0")
        if not (0 <= int(self.seed) < 2**64):
            raise InvariantError("seed must fit in 64 unsigned bits")


def _check_data(data) -> np.ndarray:
    X = np.ascontiguousarray(data, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
        raise InvariantError(f"data must be an n x d matrix, got shape {X.shape}")
    if not np.isfinite(X).all():
        raise NonFinite("data contains non-finite coordinates")
    return X


def _check_k(k: int, n: int) -> int:
    k = int(k)
    if not 2 <= k <= n:
        raise BadK(f"k must satisfy 2 <= k <= n={n}, got {k}")
    return k


def relabel_first_occurrence(labels: np.ndarray) -> np.ndarray:
    """Renumber cluster ids to 1..k by order of first appearance."""
    uniq, first = np.unique(labels, return_index=True)
    rank = np.empty(uniq.size, dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(1, uniq.size + 1)
    return rank[np.searchsorted(uniq, labels)]


def _kmeans_pp(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """k-means++ seeding: D^2-weighted draws."""
    n = X.shape[0]
    centers = np.empty((k, X.shape[1]), dtype=np.float64)
    centers[0] = X[int(rng.integers(n))]
    # always the python sqdist: seeding must not depend on the kernel backend
    closest = sqdist_to_point(X, centers[0])
    for c in range(1, k):
        total = float(closest.sum())
        if total > 0.0:
            cut = rng.random() * total
            idx = int(np.searchsorted(np.cumsum(closest), cut, side="right"))
            idx = min(idx, n - 1)
        else:  # every remaining point duplicates a chosen center
            idx = int(rng.integers(n))
        centers[c] = X[idx]
        np.minimum(closest, sqdist_to_point(X, centers[c]), out=closest)
    return centers


def _repair_empty(labels: np.ndarray, mind: np.ndarray, k: int) -> None:
    """Give each empty cluster the point farthest from its assigned center.

    Donors are restricted to clusters that keep at least one member, so the
    repair never creates a new empty cluster (n >= k guarantees a donor).
    """
    counts = np.bincount(labels, minlength=k)
    for e in np.nonzero(counts == 0)[0]:
        eligible = counts[labels] > 1
        far = int(np.argmax(np.where(eligible, mind, -1.0)))
        counts[labels[far]] -= 1
        counts[e] += 1
        labels[far] = e
        mind[far] = 0.0


def _lloyd(
    X: np.ndarray, k: int, rng: np.random.Generator, max_iter: int, tol: float
) -> tuple[np.ndarray, float, list[float]]:
    """One k-means restart; returns (labels 0-based, inertia, inertia history)."""
    n, d = X.shape
    centers = _kmeans_pp(X, k, rng)
    prev_labels: np.ndarray | None = None
    prev_inertia = np.inf
    history: list[float] = []
    labels = np.zeros(n, dtype=np.int64)
    inertia = 0.0
    for _ in range(max_iter):
        labels, mind = kernels.assign_points(X, centers)
        _repair_empty(labels, mind, k)
        inertia = float(mind.sum())
        history.append(inertia)
        if prev_labels is not None:
            if np.array_equal(labels, prev_labels):
                break
            if prev_inertia - inertia <= tol * prev_inertia:
                break
        counts = np.bincount(labels, minlength=k).astype(np.float64)
        sums = np.empty((k, d), dtype=np.float64)
        for dim in range(d):
            sums[:, dim] = np.bincount(labels, weights=X[:, dim], minlength=k)
        centers = sums / counts[:, None]
        prev_labels, prev_inertia = labels, inertia
    return labels, inertia, history


def kmeans(data, k: int, config: KMeansConfig = KMeansConfig()) -> np.ndarray:
    """Best-of-n_init Lloyd k-means; labels 1..k in first-occurrence order."""
    X = _check_data(data)
    k = _check_k(k, X.shape[0])
    best: tuple[float, int, np.ndarray] | None = None
    for r in range(config.n_init):
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(config.seed), r])))
        labels, inertia, _ = _lloyd(X, k, rng, config.max_iter, config.tol)
        if best is None or inertia < best[0]:
            best = (inertia, r, labels)
    return relabel_first_occurrence(best[2])


class _UnionFind:
    """Union-find where each root tracks its founder (minimal member index)."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller index as root so root == founder
            if ra > rb:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass(frozen=True)
class MergeTree:
    """An agglomerative merge sequence; cut it at any k."""

    n: int
    merges: np.ndarray  # (n-1, 2) founder pairs, in merge order

    def cut(self, k: int) -> np.ndarray:
        k = _check_k(k, self.n)
        uf = _UnionFind(self.n)
        for a, b in self.merges[: self.n - k]:
            uf.union(int(a), int(b))
        roots = np.fromiter((uf.find(i) for i in range(self.n)), dtype=np.int64, count=self.n)
        return relabel_first_occurrence(roots)


def _single_linkage_tree(X: np.ndarray) -> MergeTree:
    """Single linkage via the MST: process edges by (weight, founder pair)."""
    parent, weight = kernels.prim_mst(X)
    n = X.shape[0]
    edges = sorted(
        ((float(weight[j]), j, int(parent[j])) for j in range(n) if parent[j] >= 0),
        key=lambda e: e[0],
    )
    uf = _UnionFind(n)
    merges = np.empty((n - 1, 2), dtype=np.int64)
    pos = 0
    i = 0
    while i < len(edges):
        j = i
        while j < len(edges) and edges[j][0] == edges[i][0]:
            j += 1
        group = list(edges[i:j])
        # within an equal-weight group the founder pair is dynamic: re-rank
        # after every union (groups are almost always singletons)
        while group:
            keyed = []
            for g, (_, u, v) in enumerate(group):
                fu, fv = uf.find(u), uf.find(v)
                keyed.append(((min(fu, fv), max(fu, fv)), g))
            (a, b), g = min(keyed)
            merges[pos] = (a, b)
            pos += 1
            uf.union(a, b)
            group.pop(g)
        i = j
    return MergeTree(n=n, merges=merges)


def _stored_distance_tree(X: np.ndarray, linkage: str) -> MergeTree:
    n = X.shape[0]
    D = np.zeros((n, n), dtype=np.float64)
    for dim in range(X.shape[1]):
        diff = X[:, dim, None] - X[None, :, dim]
        D += diff * diff
    D = np.sqrt(D)
    mode = kernels.LINKAGE_COMPLETE if linkage == "complete" else kernels.LINKAGE_AVERAGE
    merges = kernels.linkage_merge(D, mode)
    return MergeTree(n=n, merges=merges)


def agglomerative_tree(data, linkage: str) -> MergeTree:
    X = _check_data(data)
    if linkage not in LINKAGES:
        raise InvariantError(f"linkage must be one of {LINKAGES}, got {linkage!r}")
    if X.shape[0] < 2:
        raise BadK("agglomeration needs at least 2 points")
    if linkage == "single":
        return _single_linkage_tree(X)
    return _stored_distance_tree(X, linkage)


def agglomerative(data, linkage: str, k: int) -> np.ndarray:
    """Cut the agglomerative merge tree at k clusters (Euclidean distance)."""
    return agglomerative_tree(data, linkage).cut(k)


class KMeansClusterer:
    """fit_predict handle around kmeans() for fit_predict_many."""

    def __init__(self, config: KMeansConfig = KMeansConfig()):
        self.config = config

    def fit_predict(self, data, k: int) -> np.ndarray:
        return kmeans(data, k, self.config)


class AgglomerativeClusterer:
    """Hierarchical handle: builds one tree per dataset, cuts it per k."""

    def __init__(self, linkage: str = "single"):
        if linkage not in LINKAGES:
            raise InvariantError(f"linkage must be one of {LINKAGES}, got {linkage!r}")
        self.linkage = linkage

    def fit_predict(self, data, k: int) -> np.ndarray:
        return agglomerative(data, self.linkage, k)

    def fit_predict_many(self, data, ks) -> dict[int, np.ndarray]:
        tree = agglomerative_tree(data, self.linkage)
        return {int(k): tree.cut(k) for k in ks}


def fit_predict_many(algorithm, data, ks) -> PartitionSet:
    """Run a clusterer once per requested k and bundle the partitions.

    algorithm may expose fit_predict_many(data, ks), fit_predict(data, k),
    or just be a callable (data, k) -> labels.
    """
    X = _check_data(data)
    ks = [int(k) for k in ks]
    if not ks:
        raise InvariantError("ks must be nonempty")
    if len(set(ks)) != len(ks):
        raise InvariantError(f"ks must be distinct, got {ks}")
    for k in ks:
        _check_k(k, X.shape[0])
    if hasattr(algorithm, "fit_predict_many"):
        by_k = algorithm.fit_predict_many(X, ks)
    elif hasattr(algorithm, "fit_predict"):
        by_k = {k: algorithm.fit_predict(X, k) for k in ks}
    elif callable(algorithm):
        by_k = {k: algorithm(X, k) for k in ks}
    else:
        raise InvariantError(f"cannot use {algorithm!r} as a clusterer")
    if isinstance(by_k, PartitionSet):
        return by_k
    return PartitionSet({int(k): np.asarray(v) for k, v in by_k.items()})
