"""Timing comparison of the numba kernels against the numpy fallback.

Runs the i.i.d. Gibbs chain and the regression chain at a few data sizes
on both backends and prints a table of seconds per run plus the speedup.

    python3 benchmarks/backend_bench.py [--iters 20000] [--repeat 3]
"""

import argparse
import time

import numpy as np

from yulesimon import backend, distribution
from yulesimon.gibbs import ChainConfig, GammaPrior, run_chain
from yulesimon.regression import (RegressionConfig, run_regression,
                                  simulate_regression_data)
from yulesimon.rng import RngState

PRIOR = GammaPrior(0.25, 0.05)


def time_call(fn, repeat):
    best = np.inf
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_iid(n, iters, repeat):
    data = distribution.sample(RngState(1), 1.5, size=n)
    cfg = ChainConfig(iterations=iters, burn_in=iters // 5, seed=7)
    return time_call(lambda: run_chain(data, PRIOR, cfg), repeat)


def bench_regression(n, iters, repeat):
    design = simulate_regression_data(RngState(2), np.array([1.0, -0.5]), n)
    cfg = RegressionConfig(iterations=iters, burn_in=iters // 5, seed=7)
    return time_call(lambda: run_regression(design, cfg), repeat)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--iters", type=int, default=20_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    cases = [("iid gibbs", bench_iid, (100, 1_000, 10_000)),
             ("regression", bench_regression, (100, 1_000, 5_000))]

    print(f"{args.iters} iterations per chain, best of {args.repeat} runs")
    print(f"{'chain':<12}{'n':>8}{'numba (s)':>12}{'numpy (s)':>12}"
          f"{'speedup':>10}")
    for label, fn, sizes in cases:
        for n in sizes:
            timings = {}
            for name in ("numba", "numpy"):
                backend.set_backend(name)
                fn(n, 200, 1)  # warm compile/caches outside the timing
                timings[name] = fn(n, args.iters, args.repeat)
            backend.set_backend("auto")
            print(f"{label:<12}{n:>8}{timings['numba']:>12.3f}"
                  f"{timings['numpy']:>12.3f}"
                  f"{timings['numpy'] / timings['numba']:>9.1f}x")


if __name__ == "__main__":
    main()
