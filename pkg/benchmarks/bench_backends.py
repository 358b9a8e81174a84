#!/usr/bin/env python3
"""Time the NumPy kernel implementations against their numba twins.

Run as ``python benchmarks/bench_backends.py``.  Without numba installed only
the NumPy column is reported.  Setting QUENCHKIT_NO_NUMBA only changes which
implementation the package selects; this script always times both.
"""

import math
import time

import numpy as np

from quenchkit import kernels


def timeit(fn, *args, repeats=5):
    fn(*args)  # warm-up / JIT compile
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    alpha = math.pi / 4
    omega0 = 1.6e-19 / 9.3e-31
    cases = [
        (
            "expansion_coefficients (N=1e6)",
            (4.9, 1_000_000, 1e-9),
        ),
        (
            "spin_rk4 (1e6 steps)",
            (
                alpha,
                omega0,
                omega0,
                2 * math.pi / omega0,
                1_000_000,
                complex(math.cos(alpha / 2)),
                complex(math.sin(alpha / 2)),
                1_000_000,
            ),
        ),
        (
            "cycle_return_curve (1e7 points)",
            (np.linspace(0.05, 20.0, 10_000_000), alpha),
        ),
    ]

    numba_impls = kernels.numba_impls()
    print(f"selected backend: {kernels.BACKEND}")
    header = f"{'kernel':36s} {'numpy':>10s} {'numba':>10s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for name, args in cases:
        key = name.split(" ")[0]
        t_np = timeit(kernels.NUMPY_IMPLS[key], *args)
        if numba_impls is None:
            print(f"{name:36s} {t_np * 1e3:8.1f}ms {'n/a':>10s} {'n/a':>8s}")
            continue
        t_nb = timeit(numba_impls[key], *args)
        print(
            f"{name:36s} {t_np * 1e3:8.1f}ms {t_nb * 1e3:8.1f}ms {t_np / t_nb:7.1f}x"
        )


if __name__ == "__main__":
    main()
