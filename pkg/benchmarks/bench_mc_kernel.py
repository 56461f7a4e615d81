#!/usr/bin/env python3
"""Benchmark the Monte-Carlo moment kernel: numba @njit versus pure numpy.

Both implementations consume identical Philox uniforms, so this measures
the kernel alone (Box-Muller transform, soft limiting, 13 moment sums).
The numba path is compiled and warmed before timing.

Usage: python benchmarks/bench_mc_kernel.py [--samples N] [--repeats K]
"""

import argparse
import statistics
import time

import numpy as np

from foglink import _kernels


def time_kernel(kernel, u1, u2, sigma2, p_max, repeats):
    timings = []
    for _ in range(repeats):
        start = time.perf_counter()
        kernel(u1, u2, sigma2, p_max)
        timings.append(time.perf_counter() - start)
    return timings


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=5_000_000)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.Generator(np.random.Philox(key=123))
    u1 = rng.random(args.samples)
    u2 = rng.random(args.samples)
    sigma2, p_max = 1.0, 1.0

    kernels = {"numpy": _kernels.moment_sums_numpy}
    if _kernels.moment_sums_numba is not None:
        _kernels.moment_sums_numba(u1[:1000], u2[:1000], sigma2, p_max)  # warm JIT
        kernels["numba"] = _kernels.moment_sums_numba
    else:
        print("numba backend unavailable (not installed or FOGLINK_NO_NUMBA set); "
              "timing numpy only")

    print(f"samples per call: {args.samples:,}   repeats: {args.repeats}")
    results = {}
    for name, kernel in kernels.items():
        timings = time_kernel(kernel, u1, u2, sigma2, p_max, args.repeats)
        best = min(timings)
        results[name] = best
        rate = args.samples / best / 1e6
        print(f"{name:>6}: best {best * 1e3:8.2f} ms   median {statistics.median(timings) * 1e3:8.2f} ms   {rate:7.1f} Msamples/s")

    if len(results) == 2:
        print(f"speedup (numba over numpy): {results['numpy'] / results['numba']:.2f}x")
        a = _kernels.moment_sums_numpy(u1, u2, sigma2, p_max)
        b = _kernels.moment_sums_numba(u1, u2, sigma2, p_max)
        gap = float(np.max(np.abs(a - b) / np.maximum(np.abs(a), 1.0)))
        print(f"largest relative gap between backends: {gap:.2e}")


if __name__ == "__main__":
    main()
