"""Kernel backend selection.

Imports the compiled extension when it is available and not disabled via
CLUBENCH_PURE_PYTHON=1, otherwise the numpy fallbacks.  Both backends are
bitwise-equivalent; the extension is only faster.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

LINKAGE_COMPLETE = _kernels_py.LINKAGE_COMPLETE
LINKAGE_AVERAGE = _kernels_py.LINKAGE_AVERAGE

if os.environ.get("CLUBENCH_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _native as _impl  # type: ignore[no-redef]

        BACKEND = "native"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"


def _as_matrix(X) -> np.ndarray:
    return np.ascontiguousarray(X, dtype=np.float64)


def assign_points(X, centers):
    """Nearest-center assignment: (0-based labels, squared distances)."""
    return _impl.assign_points(_as_matrix(X), _as_matrix(centers))


def prim_mst(X):
    """MST of the complete squared-Euclidean graph: (parent, weight) per vertex."""
    return _impl.prim_mst(_as_matrix(X))


def linkage_merge(D, mode: int):
    """Agglomeration merge list for a full symmetric distance matrix."""
    return _impl.linkage_merge(_as_matrix(D), mode)
