#!/usr/bin/env python3
"""Time the numba and pure-numpy kernel implementations side by side.

Covers the hot paths of the library: Blaschke evaluation over boundary
grids, the density pipeline, Gram quadrature, and the Herglotz/pair-kernel
transforms.  Numba compilation happens during warmup and is not timed.

Usage:
    python benchmarks/kernel_benchmark.py
    python benchmarks/kernel_benchmark.py --sizes 4096,65536 --repeats 5
"""

import argparse
import time

import numpy as np

from herglotz_measures import _kernels

NODES = np.array([0.5, 0.3j, -0.2, 0.1 - 0.6j, -0.4 + 0.2j, 0.7j], dtype=complex)


def make_workloads(size: int):
    rng = np.random.default_rng(size)
    t = np.exp(2j * np.pi * np.arange(size) / size)
    density = rng.uniform(0.1, 2.0, size)
    s = 0.8 * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size))
    return {
        "blaschke_values": (t, NODES),
        "poisson_slope": (t, NODES),
        "density_values": (s, 1e-9),
        "gram_from_density": (t, density, NODES),
        "herglotz_transform": (t, density, 0.3 - 0.4j),
        "pair_quadrature": (t, density, 0.2 + 0.1j, -0.5j),
    }


def median_seconds(fn, args, repeats: int) -> float:
    fn(*args)  # warmup (includes JIT compilation on the numba path)
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - start)
    return float(np.median(times))


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="4096,16384,65536",
                        help="comma-separated grid sizes")
    parser.add_argument("--repeats", type=int, default=9)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if "numba" not in _kernels.IMPLEMENTATIONS:
        print("numba is not importable; only the numpy path can be timed")
        return 1

    header = f"{'kernel':<20} {'N':>7} {'numpy [ms]':>12} {'numba [ms]':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for size in sizes:
        workloads = make_workloads(size)
        for name, call_args in workloads.items():
            t_numpy = median_seconds(
                _kernels.IMPLEMENTATIONS["numpy"][name], call_args, args.repeats
            )
            t_numba = median_seconds(
                _kernels.IMPLEMENTATIONS["numba"][name], call_args, args.repeats
            )
            print(
                f"{name:<20} {size:>7} {t_numpy * 1e3:>12.3f} {t_numba * 1e3:>12.3f} "
                f"{t_numpy / t_numba:>8.2f}x"
            )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
