"""Benchmark the numba kernels against the pure-numpy fallback.

Usage: python benchmarks/bench_backends.py [--sizes 256 1024 4096] [--repeat 5]

Times the three O(N^2) hot kernels (periodic convolution, linear
convolution, oscillatory sum table) on each backend and prints a speedup
table.  The numba timings exclude compilation (one warmup call).
"""

import argparse
import time

import numpy as np

from specgrad import _kernels


def _inputs(n, seed):
    rng = np.random.default_rng(seed)
    c = rng.normal(size=n) + 1j * rng.normal(size=n)
    ktab_p = rng.normal(size=n) + 1j * rng.normal(size=n)
    ktab_l = rng.normal(size=2 * n - 1) + 1j * rng.normal(size=2 * n - 1)
    j = np.arange(n)
    mode_index = np.where(j <= n // 2, j, j - n)
    twiddles = np.exp(2j * np.pi * np.arange(n) / n)
    return {
        "convolve_periodic": lambda: _kernels.convolve_periodic(c[None, :], ktab_p, 0.1),
        "convolve_linear": lambda: _kernels.convolve_linear(c, ktab_l, 0.1),
        "oscillatory_sum_table": lambda: _kernels.oscillatory_sum_table(c, mode_index, twiddles),
    }


def _time(fn, repeat):
    fn()  # warmup (numba compiles here)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[256, 1024, 4096])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    print(f"{'kernel':<24} {'n':>6} {'numpy [ms]':>12} {'numba [ms]':>12} {'speedup':>8}")
    for n in args.sizes:
        timings = {}
        for backend in ("numpy", "numba"):
            try:
                _kernels.use_backend(backend)
            except (ImportError, ValueError) as err:
                print(f"backend {backend} unavailable: {err}")
                return
            timings[backend] = {
                name: _time(fn, args.repeat) for name, fn in _inputs(n, seed=n).items()
            }
        for name in timings["numpy"]:
            t_np = timings["numpy"][name] * 1e3
            t_nb = timings["numba"][name] * 1e3
            print(f"{name:<24} {n:>6} {t_np:>12.3f} {t_nb:>12.3f} {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
