"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_backends.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from complex_hermite import _kernels_py

try:
    from complex_hermite import _kernels as _compiled
except ImportError:
    _compiled = None

rng = np.random.default_rng(0)
POINTS = rng.normal(size=10_000) + 1j * rng.normal(size=10_000)

CASES = [
    ("chp_table 12x12, one point", lambda k: k.chp_table(1.1 - 0.4j, 1.3, 12, 12)),
    ("chp_table 40x40, one point", lambda k: k.chp_table(1.1 - 0.4j, 1.3, 40, 40)),
    ("chp_scaled_table order 40", lambda k: k.chp_scaled_table(1.1 - 0.4j, 1.3, 40)),
    ("chp_scaled_table order 160", lambda k: k.chp_scaled_table(1.1 - 0.4j, 1.3, 160)),
    ("chp_points (5,3), 10k points", lambda k: k.chp_points(5, 3, POINTS, 1.3)),
    ("hermite_function_table n=80", lambda k: k.hermite_function_table(0.7, 80)),
]


def best_of(fn, backend, repeat):
    timer = timeit.Timer(lambda: fn(backend))
    number, _ = timer.autorange()
    return min(timer.repeat(repeat, number)) / number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _compiled is None:
        print("compiled extension not built; only the fallback is timed")
    print(f"{'kernel':32} {'python (us)':>12} {'cython (us)':>12} {'speedup':>8}")
    for name, fn in CASES:
        py = best_of(fn, _kernels_py, args.repeat) * 1e6
        if _compiled is None:
            print(f"{name:32} {py:12.1f} {'-':>12} {'-':>8}")
            continue
        cy = best_of(fn, _compiled, args.repeat) * 1e6
        print(f"{name:32} {py:12.1f} {cy:12.1f} {py / cy:7.1f}x")


if __name__ == "__main__":
    main()
