# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Native kernels: drop-in twins of the numpy fallbacks in _kernels_py.

Arithmetic is kept operation-identical to the fallback (same accumulation
order, strict-< first-minimum ties, no FP contraction) so both backends
return bitwise identical results.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND_NAME = "native"

cdef double INF = float("inf")


def assign_points(const double[:, ::1] X, const double[:, ::1] centers):
    cdef Py_ssize_t n = X.shape[0]
    cdef Py_ssize_t d = X.shape[1]
    cdef Py_ssize_t k = centers.shape[0]
    labels_arr = np.zeros(n, dtype=np.int64)
    mind_arr = np.empty(n, dtype=np.float64)
    cdef cnp.int64_t[::1] labels = labels_arr
    cdef double[::1] mind = mind_arr
    cdef Py_ssize_t i, c, dim, bestc
    cdef double acc, diff, best
    for i in range(n):
        best = 0.0
        bestc = 0
        for c in range(k):
            acc = 0.0
            for dim in range(d):
                diff = X[i, dim] - centers[c, dim]
                acc += diff * diff
            if c == 0 or acc < best:
                best = acc
                bestc = c
        labels[i] = bestc
        mind[i] = best
    return labels_arr, mind_arr


def prim_mst(const double[:, ::1] X):
    cdef Py_ssize_t n = X.shape[0]
    cdef Py_ssize_t d = X.shape[1]
    out_parent_arr = np.full(n, -1, dtype=np.int64)
    out_weight_arr = np.zeros(n, dtype=np.float64)
    cdef cnp.int64_t[::1] out_parent = out_parent_arr
    cdef double[::1] out_weight = out_weight_arr
    parent_arr = np.zeros(n, dtype=np.int64)
    best_arr = np.empty(n, dtype=np.float64)
    intree_arr = np.zeros(n, dtype=np.uint8)
    cdef cnp.int64_t[::1] parent = parent_arr
    cdef double[::1] best = best_arr
    cdef cnp.uint8_t[::1] intree = intree_arr
    cdef Py_ssize_t i, j, dim, step
    cdef double acc, diff, bv
    for i in range(n):
        acc = 0.0
        for dim in range(d):
            diff = X[i, dim] - X[0, dim]
            acc += diff * diff
        best[i] = acc
    best[0] = INF
    intree[0] = 1
    for step in range(n - 1):
        j = 0
        bv = best[0]
        for i in range(1, n):
            if best[i] < bv:
                bv = best[i]
                j = i
        out_parent[j] = parent[j]
        out_weight[j] = best[j]
        intree[j] = 1
        best[j] = INF
        for i in range(n):
            if intree[i]:
                continue
            acc = 0.0
            for dim in range(d):
                diff = X[i, dim] - X[j, dim]
                acc += diff * diff
            if acc < best[i]:
                best[i] = acc
                parent[i] = j
    return out_parent_arr, out_weight_arr


cdef inline void _recompute_row(
    double[:, ::1] D, cnp.uint8_t[::1] alive, double[::1] rmin,
    cnp.int64_t[::1] rcol, Py_ssize_t i, Py_ssize_t n
) noexcept nogil:
    cdef Py_ssize_t j
    cdef double bv = INF
    cdef Py_ssize_t bj = -1
    for j in range(n):
        if alive[j] and j != i and D[i, j] < bv:
            bv = D[i, j]
            bj = j
    rmin[i] = bv
    rcol[i] = bj


def linkage_merge(const double[:, ::1] D0, int mode):
    # Row-minimum caches make the per-step scan O(n); the chosen pair and
    # the Lance-Williams arithmetic are identical to the fallback's full
    # row-major argmin (first row attaining the minimum, then first column).
    cdef Py_ssize_t n = D0.shape[0]
    D_arr = np.array(D0, dtype=np.float64)
    cdef double[:, ::1] D = D_arr
    size_arr = np.ones(n, dtype=np.float64)
    cdef double[::1] size = size_arr
    merges_arr = np.empty((n - 1, 2), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] merges = merges_arr
    alive_arr = np.ones(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] alive = alive_arr
    rmin_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] rmin = rmin_arr
    rcol_arr = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[::1] rcol = rcol_arr
    cdef Py_ssize_t i, a, b, c, step
    cdef double bv, val, da, db, sa, sb
    for i in range(n):
        D[i, i] = INF
        _recompute_row(D, alive, rmin, rcol, i, n)
    for step in range(n - 1):
        a = -1
        bv = INF
        for i in range(n):
            if alive[i] and rmin[i] < bv:
                bv = rmin[i]
                a = i
        b = rcol[a]
        merges[step, 0] = a
        merges[step, 1] = b
        sa = size[a]
        sb = size[b]
        for c in range(n):
            da = D[a, c]
            db = D[b, c]
            if mode == 0:
                val = da if da > db else db
            else:
                val = (sa * da + sb * db) / (sa + sb)
            D[a, c] = val
            D[c, a] = val
        D[a, a] = INF
        for c in range(n):
            D[b, c] = INF
            D[c, b] = INF
        size[a] = sa + sb
        alive[b] = 0
        _recompute_row(D, alive, rmin, rcol, a, n)
        for c in range(n):
            if not alive[c] or c == a:
                continue
            if rcol[c] == a or rcol[c] == b:
                _recompute_row(D, alive, rmin, rcol, c, n)
            else:
                val = D[c, a]
                if val < rmin[c] or (val == rmin[c] and a < rcol[c]):
                    rmin[c] = val
                    rcol[c] = a
    return merges_arr
