"""Exact linear assignment: max-weight bijections between rows and columns.

The solver is an O(k^3) augmenting-path (Hungarian-style) method run on the
negated weights.  It is deliberately generic over the entry type: floats for
the public API, plain (big)ints for the exact normalized-accuracy path.  Ties
are broken toward the lexicographically smallest mapping array, detected at
exact equality, with totals accumulated by math.fsum so the reported optimum
does not depend on summation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from numbers import Real

import numpy as np

from .errors import InvariantError, NonFinite, NotSquare


@dataclass(frozen=True)
class Permutation:
    """A bijection sigma on {1..k}; mapping[j-1] = sigma(j)."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        k = len(self.mapping)
        if sorted(self.mapping) != list(range(1, k + 1)):
            raise ValueError(f"mapping {self.mapping} is not a bijection on 1..{k}")

    def __call__(self, j: int) -> int:
        return self.mapping[j - 1]

    def __len__(self) -> int:
        return len(self.mapping)


def _lap_min(cost) -> list[int]:
    """Column-to-row assignment minimizing the total of a square cost matrix.

    cost is a list of lists over any numeric type closed under +/- and
    ordering (float, int, Fraction).  Returns m with m[j] = assigned row,
    both 0-based.  None plays the role of +infinity internally.
    """
    n = len(cost)
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    p = [0] * (n + 1)  # p[j] = 1-based row matched to column j (p[0] is scratch)
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [None] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = None
            j1 = 0
            row = cost[i0 - 1]
            ui = u[i0]
            for j in range(1, n + 1):
                if used[j]:
                    continue
                cur = row[j - 1] - ui - v[j]
                if minv[j] is None or cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if delta is None or minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                elif minv[j] is not None:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    return [p[j] - 1 for j in range(1, n + 1)]


def _total(weights, mapping) -> object:
    """Canonical total of the selected cells (order-independent for floats)."""
    vals = [weights[mapping[j]][j] for j in range(len(mapping))]
    if vals and all(type(v) is float for v in vals):
        return math.fsum(vals)
    return sum(vals)


def _lap_max(weights) -> list[int]:
    cost = [[-x for x in row] for row in weights]
    return _lap_min(cost)


def _complete_prefix(weights, prefix: list[int], k: int) -> list[int]:
    """Best assignment whose first len(prefix) columns are fixed to prefix."""
    taken = set(prefix)
    rem_rows = [r for r in range(k) if r not in taken]
    if not rem_rows:
        return list(prefix)
    rem_cols = list(range(len(prefix), k))
    sub = [[-weights[r][c] for c in rem_cols] for r in rem_rows]
    m = _lap_min(sub)
    return list(prefix) + [rem_rows[m[j]] for j in range(len(rem_cols))]


def _refine_lexicographic(weights, mapping: list[int], total) -> list[int]:
    """Among assignments whose total is exactly equal, pick the smallest mapping."""
    k = len(mapping)
    mapping = list(mapping)
    for j in range(k):
        used = set(mapping[:j])
        for r in range(mapping[j]):
            if r in used:
                continue
            cand = _complete_prefix(weights, mapping[:j] + [r], k)
            if _total(weights, cand) == total:
                mapping = cand
                break
    return mapping


def _brute_force(weights, k: int) -> list[int]:
    best = None
    best_total = None
    for perm in permutations(range(k)):
        t = _total(weights, perm)
        if best_total is None or t > best_total:
            best, best_total = perm, t
    return list(best)


def solve_value(weights) -> tuple[list[int], object]:
    """Optimal (mapping, exact total) without tie refinement; internal."""
    mapping = _lap_max(weights)
    return mapping, _total(weights, mapping)


def solve_assignment(weights) -> tuple[Permutation, float]:
    """Find sigma maximizing sum_j weights[sigma(j)][j] over bijections.

    Returns the lexicographically smallest optimal mapping (as a 1-based
    Permutation) and the optimal total.  Exact optimum for every square
    finite matrix; ties are detected at exact float equality.
    """
    arr = np.asarray(weights, dtype=object)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise NotSquare(f"weights must be a nonempty square matrix, got shape {arr.shape}")
    k = arr.shape[0]
    rows = [list(row) for row in arr]
    numeric = np.asarray(weights)
    if np.issubdtype(numeric.dtype, np.number):
        if not np.isfinite(np.asarray(numeric, dtype=np.float64)).all():
            raise NonFinite("weights contain non-finite entries")
        if np.issubdtype(numeric.dtype, np.floating):
            rows = [[float(x) for x in row] for row in numeric]
        elif np.issubdtype(numeric.dtype, np.integer):
            rows = [[int(x) for x in row] for row in numeric]
    else:
        for row in rows:
            for x in row:
                if not isinstance(x, Real):
                    raise InvariantError(f"weights must be numeric, got {type(x).__name__}")
                if isinstance(x, float) and not math.isfinite(x):
                    raise NonFinite("weights contain non-finite entries")

    if k <= 3:
        mapping = _brute_force(rows, k)
    else:
        mapping = _lap_max(rows)
        mapping = _refine_lexicographic(rows, mapping, _total(rows, mapping))
    total = _total(rows, mapping)
    return Permutation(tuple(m + 1 for m in mapping)), total
