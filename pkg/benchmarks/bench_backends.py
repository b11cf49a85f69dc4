#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Runs the three hot kernels on representative sizes with both backends and
prints a table.  The numba backend includes a warmup call so jit
compilation stays out of the timings.

    python3 benchmarks/bench_backends.py [--quick]
"""

import argparse
import time

import numpy as np

from ghdense import _kernels_numpy
from ghdense.isometry import eccentricity_order
from ghdense.spaces import from_point_cloud

try:
    from ghdense import _kernels_numba

    BACKENDS = {"numpy": _kernels_numpy, "numba": _kernels_numba}
except ImportError:
    BACKENDS = {"numpy": _kernels_numpy}


def _time(fn, *args, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="smaller workloads")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    scan_n, scan_m = (6, 8) if args.quick else (7, 10)  # m^n candidate maps
    bnb_n = 7 if args.quick else 8
    fps_n = 1500 if args.quick else 4000

    X = from_point_cloud(rng.uniform(0, 1, size=(scan_n, 3)))
    Y = from_point_cloud(rng.uniform(0, 1, size=(scan_m, 3)))
    f = rng.uniform(-1, 1, scan_n)
    g = rng.uniform(-1, 1, scan_m)

    A = from_point_cloud(rng.uniform(0, 1, size=(bnb_n, 3)))
    B = from_point_cloud(rng.uniform(0, 1, size=(bnb_n, 3)))
    fa = rng.uniform(-1, 1, bnb_n)
    gb = rng.uniform(-1, 1, bnb_n)
    order = eccentricity_order(A)

    big = from_point_cloud(rng.uniform(0, 1, size=(fps_n, 3)))

    workloads = {
        f"scan_maps {scan_m}^{scan_n}={scan_m**scan_n:,} maps": lambda impl: impl.scan_maps(
            np.ascontiguousarray(X.dist), np.ascontiguousarray(Y.dist), f, g
        ),
        f"bnb_maps {bnb_n}x{bnb_n}": lambda impl: impl.bnb_maps(
            np.ascontiguousarray(A.dist), np.ascontiguousarray(B.dist), fa, gb, order
        ),
        f"fps_indices n={fps_n}": lambda impl: impl.fps_indices(
            np.ascontiguousarray(big.dist), 0.02 * big.diameter, 0
        ),
    }

    if "numba" in BACKENDS:  # compile outside the timings
        for name, call in workloads.items():
            call(BACKENDS["numba"])

    print(f"{'kernel':<38} " + " ".join(f"{b:>12}" for b in BACKENDS) + "   speedup")
    for name, call in workloads.items():
        times = {}
        results = {}
        for backend, impl in BACKENDS.items():
            times[backend], results[backend] = _time(call, impl)
        if len(results) == 2:
            a, b = results["numpy"], results["numba"]
            same = (
                np.allclose(np.atleast_1d(a[0]), np.atleast_1d(b[0]))
                and np.array_equal(a[1], b[1])
                if isinstance(a, tuple)
                else np.array_equal(a, b)
            )
            assert same, f"backend results differ for {name}"
        row = f"{name:<38} " + " ".join(f"{times[b] * 1e3:>10.2f}ms" for b in BACKENDS)
        if len(times) == 2:
            row += f"   {times['numpy'] / times['numba']:.1f}x"
        print(row)


if __name__ == "__main__":
    main()
