"""Pure-Python (numpy) kernels: the fallback backend.

These mirror the native Cython kernels operation-for-operation.  Distances
are accumulated dimension by dimension and ties resolve to the smallest
index in both backends, so for identical inputs the two produce bitwise
identical outputs.
"""

from __future__ import annotations

import numpy as np


def sqdist_to_point(X: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Squared Euclidean distance from every row of X to the point p."""
    acc = np.zeros(X.shape[0], dtype=np.float64)
    for dim in range(X.shape[1]):
        diff = X[:, dim] - p[dim]
        acc += diff * diff
    return acc


def assign_points(X: np.ndarray, centers: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Nearest center per point: (labels 0-based, squared distance to it)."""
    n = X.shape[0]
    labels = np.zeros(n, dtype=np.int64)
    mind = sqdist_to_point(X, centers[0])
    for c in range(1, centers.shape[0]):
        d = sqdist_to_point(X, centers[c])
        closer = d < mind
        labels[closer] = c
        mind[closer] = d[closer]
    return labels, mind


def prim_mst(X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Minimum spanning tree of the complete squared-Euclidean graph.

    Returns (parent, weight): for every vertex j > 0 in insertion order,
    parent[j] is its tree neighbour and weight[j] the squared edge length;
    parent[0] = -1.  Ties pick the smallest vertex index.
    """
    n = X.shape[0]
    parent = np.zeros(n, dtype=np.int64)
    out_parent = np.full(n, -1, dtype=np.int64)
    out_weight = np.zeros(n, dtype=np.float64)
    in_tree = np.zeros(n, dtype=bool)
    in_tree[0] = True
    best = sqdist_to_point(X, X[0])
    best[0] = np.inf
    for _ in range(n - 1):
        j = int(np.argmin(best))
        out_parent[j] = parent[j]
        out_weight[j] = best[j]
        in_tree[j] = True
        best[j] = np.inf
        d = sqdist_to_point(X, X[j])
        closer = (d < best) & ~in_tree
        best[closer] = d[closer]
        parent[closer] = j
    return out_parent, out_weight


LINKAGE_COMPLETE = 0
LINKAGE_AVERAGE = 1


def linkage_merge(D: np.ndarray, mode: int) -> np.ndarray:
    """Stored-distance agglomeration of a full symmetric distance matrix.

    Merges the closest active pair n-1 times, combining distances with the
    complete (max) or average (size-weighted mean) rule.  The merged cluster
    keeps the smaller slot, so active slots are exactly the cluster founders
    (their minimal original point index) and the row-major argmin realizes
    the (min founder, max founder) tie-break.  Returns the (n-1) x 2 merge
    list of founder slots, smaller first.
    """
    D = np.array(D, dtype=np.float64)
    n = D.shape[0]
    size = np.ones(n, dtype=np.float64)
    idx = np.arange(n)
    D[idx, idx] = np.inf
    merges = np.empty((n - 1, 2), dtype=np.int64)
    for step in range(n - 1):
        flat = int(np.argmin(D))
        a, b = divmod(flat, n)
        if a > b:  # symmetric matrix: row-major first hit has a < b
            a, b = b, a
        merges[step] = (a, b)
        sa, sb = size[a], size[b]
        if mode == LINKAGE_COMPLETE:
            row = np.maximum(D[a], D[b])
        else:
            row = (sa * D[a] + sb * D[b]) / (sa + sb)
        D[a, :] = row
        D[:, a] = row
        D[a, a] = np.inf
        D[b, :] = np.inf
        D[:, b] = np.inf
        size[a] = sa + sb
    return merges
