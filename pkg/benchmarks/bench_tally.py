#!/usr/bin/env python3
"""Benchmark the sampling kernels: compiled extension vs numpy fallback.

Usage: python benchmarks/bench_tally.py [--sizes 1e5 1e6 1e7] [--repeat 5]

Times only the tally (classification + counting) of pre-drawn uniforms,
which is the hot loop of `interfilt simulate`. Both backends must produce
identical counts; the run aborts if they do not.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from interfilt import kernels
from interfilt.reference import ReferenceParams, build_reference, ds_beta


def best_time(fn, repeat: int) -> float:
    fn()  # warm up
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", nargs="+", type=float, default=[1e5, 1e6, 1e7])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    model = build_reference(ReferenceParams(0.2, ds_beta(0.2)))
    lowered = kernels.lower_model(model)
    backends = kernels.available_backends()
    print(f"selected backend: {kernels.BACKEND}; benchmarking: {', '.join(backends)}")
    print(f"{'samples':>12} " + " ".join(f"{name:>14}" for name in backends) + f" {'speedup':>9}")

    gen = np.random.Generator(np.random.Philox(key=np.array([0, 0], dtype=np.uint64)))
    for size in args.sizes:
        n = int(size)
        u = gen.random(n)
        counts = {
            name: kernels.tally_counts(u, lowered, impl=mod)
            for name, mod in backends.items()
        }
        baseline = counts["python"]
        for name, c in counts.items():
            if not np.array_equal(baseline, c):
                raise SystemExit(f"backend {name} produced different counts")
        timings = {
            name: best_time(lambda mod=mod: kernels.tally_counts(u, lowered, impl=mod),
                            args.repeat)
            for name, mod in backends.items()
        }
        cells = " ".join(
            f"{n / timings[name] / 1e6:>11.1f} M/s" for name in backends
        )
        if "cython" in timings:
            speedup = f"{timings['python'] / timings['cython']:>8.1f}x"
        else:
            speedup = "     n/a"
        print(f"{n:>12,} {cells} {speedup}")


if __name__ == "__main__":
    main()
