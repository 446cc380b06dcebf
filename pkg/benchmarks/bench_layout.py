#!/usr/bin/env python3
"""Benchmark the compiled layout kernel against the pure-numpy fallback.

Usage: python benchmarks/bench_layout.py [--nodes N ...] [--iters I]
"""

import argparse
import random
import time

import numpy as np

from genegraph.layout import _kernel_py

try:
    from genegraph.layout import _speedup
except ImportError:
    _speedup = None

ARGS = (5000.0, 0.05, 60.0, 0.85, 0.02, 500.0, 500.0, 20.0)


def make_problem(n: int, seed: int = 1):
    rng = random.Random(seed)
    npr = np.random.default_rng(seed)
    pos = npr.uniform(0.0, 1000.0, (n, 2))
    vel = np.zeros((n, 2))
    m = 2 * n
    ea = np.asarray([rng.randrange(n) for _ in range(m)], dtype=np.int64)
    eb = np.asarray([rng.randrange(n) for _ in range(m)], dtype=np.int64)
    ew = npr.uniform(0.1, 1.0, m)
    return pos, vel, ea, eb, ew


def bench(kernel, n: int, iters: int) -> float:
    pos, vel, ea, eb, ew = make_problem(n)
    started = time.perf_counter()
    for _ in range(iters):
        kernel.step_arrays(pos, vel, ea, eb, ew, *ARGS)
    return time.perf_counter() - started


def agreement(n: int) -> float:
    """Max per-coordinate difference after one step from the same state."""
    p1, v1, ea, eb, ew = make_problem(n)
    p2, v2 = p1.copy(), v1.copy()
    _speedup.step_arrays(p1, v1, ea, eb, ew, *ARGS)
    _kernel_py.step_arrays(p2, v2, ea, eb, ew, *ARGS)
    return float(np.abs(p1 - p2).max())


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--nodes", type=int, nargs="+", default=[50, 200, 500])
    parser.add_argument("--iters", type=int, default=300)
    args = parser.parse_args()

    print(f"{'kernel':<10}{'nodes':>8}{'iters':>8}{'seconds':>12}{'steps/s':>12}")
    for n in args.nodes:
        rows = [("python", _kernel_py)]
        if _speedup is not None:
            rows.insert(0, ("compiled", _speedup))
        timings = {}
        for name, kernel in rows:
            seconds = bench(kernel, n, args.iters)
            timings[name] = seconds
            print(f"{name:<10}{n:>8}{args.iters:>8}{seconds:>12.3f}"
                  f"{args.iters / seconds:>12.0f}")
        if _speedup is not None:
            print(f"{'':>10}speedup {timings['python'] / timings['compiled']:.1f}x, "
                  f"single-step max |dpos|: {agreement(n):.2e}")
    if _speedup is None:
        print("compiled kernel not built; showing fallback only")


if __name__ == "__main__":
    main()
