"""Compare the compiled kernel backend against the pure-numpy fallback.

Run as a script; prints per-kernel timings and the speedup ratio.
The workloads mirror the hot paths: minor-lift evaluation of e_k over
random matrices, and Jacobi eigenvalue sweeps.
"""

import time

import numpy as np

from minorlift import _kernels_py
from minorlift.kernels import BACKEND
from minorlift.polys import MultiAffinePoly

try:
    from minorlift import _kernels
except ImportError:
    _kernels = None


def _term_arrays(p):
    masks = np.array(sorted(p.terms), dtype=np.int64)
    coeffs = np.array([p.terms[int(m)] for m in masks])
    return masks, coeffs


def bench_minor_lift(mod, mats, masks, coeffs, reps):
    t0 = time.perf_counter()
    acc = 0.0
    for _ in range(reps):
        for A in mats:
            acc += mod.minor_lift_sum(coeffs, masks, A)
    return time.perf_counter() - t0, acc


def bench_jacobi(mod, mats, reps):
    t0 = time.perf_counter()
    acc = 0.0
    for _ in range(reps):
        for A in mats:
            acc += float(np.sum(mod.jacobi_eigenvalues(A)))
    return time.perf_counter() - t0, acc


def main():
    rng = np.random.default_rng(0)
    n = 8
    p = MultiAffinePoly.elementary(n, 4)
    masks, coeffs = _term_arrays(p)
    mats = []
    for _ in range(50):
        B = rng.standard_normal((n, n))
        mats.append(np.ascontiguousarray(B + B.T))

    print(f"active backend: {BACKEND}")
    if _kernels is None:
        print("compiled backend unavailable; timing fallback only")

    rows = []
    for name, work in [
        ("minor_lift_sum(e_4, n=8)", lambda m: bench_minor_lift(m, mats, masks, coeffs, 20)),
        ("jacobi_eigenvalues(n=8)", lambda m: bench_jacobi(m, mats, 20)),
    ]:
        t_py, v_py = work(_kernels_py)
        if _kernels is not None:
            t_cy, v_cy = work(_kernels)
            assert abs(v_py - v_cy) <= 1e-6 * (1 + abs(v_py)), "backend mismatch"
            rows.append((name, t_py, t_cy, t_py / t_cy))
        else:
            rows.append((name, t_py, float("nan"), float("nan")))

    print(f"{'kernel':<28} {'python (s)':>12} {'compiled (s)':>13} {'speedup':>9}")
    for name, t_py, t_cy, ratio in rows:
        print(f"{name:<28} {t_py:>12.4f} {t_cy:>13.4f} {ratio:>8.1f}x")


if __name__ == "__main__":
    main()
