"""Compare the native kernels against the pure-Python fallbacks.

Usage: python benchmarks/bench_kernels.py [--quick]

Times each kernel on synthetic workloads, checks both backends return
bitwise identical results, and prints a speedup table.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from clubench import _kernels_py  # noqa: E402

try:
    from clubench import _native
except ImportError:
    _native = None


def timeit(fn, *args, repeats: int = 3) -> tuple[float, object]:
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def same(a, b) -> bool:
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def workloads(quick: bool):
    rng = np.random.Generator(np.random.PCG64(7))
    scale = 0.3 if quick else 1.0
    n_assign = int(20000 * scale)
    n_mst = int(3000 * scale)
    n_link = int(600 * scale)

    X = np.ascontiguousarray(rng.normal(size=(n_assign, 8)))
    C = np.ascontiguousarray(rng.normal(size=(24, 8)))
    yield f"assign_points n={n_assign} d=8 k=24", "assign_points", (X, C)

    Y = np.ascontiguousarray(rng.normal(size=(n_mst, 3)))
    yield f"prim_mst n={n_mst} d=3", "prim_mst", (Y,)

    Z = rng.normal(size=(n_link, 2))
    D = np.zeros((n_link, n_link))
    for dim in range(2):
        diff = Z[:, dim, None] - Z[None, :, dim]
        D += diff * diff
    D = np.ascontiguousarray(np.sqrt(D))
    yield f"linkage_merge n={n_link} complete", "linkage_merge", (D, 0)
    yield f"linkage_merge n={n_link} average", "linkage_merge", (D, 1)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="smaller workloads")
    args = parser.parse_args()

    if _native is None:
        print("native extension not built (pip install -e . or python setup.py build_ext --inplace)")
        print("timing the pure-Python backend only\n")

    header = f"{'workload':38} {'python':>10} {'native':>10} {'speedup':>8}  match"
    print(header)
    print("-" * len(header))
    for label, kernel, work_args in workloads(args.quick):
        t_py, out_py = timeit(getattr(_kernels_py, kernel), *work_args)
        if _native is None:
            print(f"{label:38} {t_py * 1000:9.1f}ms {'-':>10} {'-':>8}")
            continue
        t_nat, out_nat = timeit(getattr(_native, kernel), *work_args)
        match = "yes" if same(out_py, out_nat) else "NO (bug!)"
        print(
            f"{label:38} {t_py * 1000:9.1f}ms {t_nat * 1000:9.1f}ms {t_py / t_nat:7.1f}x  {match}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
