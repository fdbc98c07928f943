"""Benchmark the compiled kernels against the pure-Python fallback.

Runs each hot kernel on representative sizes with both backends and
prints a small table of best-of-N wall times.  Usage::

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from bergmult import _kernels_py

try:
    from bergmult import _kernels_cy
except ImportError:
    _kernels_cy = None


def _best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def _cases(rng):
    n = 4096
    x = rng.standard_normal(n)
    a = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    b = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    num = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    den = np.concatenate(([1.0 + 0.0j], 0.1 * (rng.standard_normal(7) + 1j * rng.standard_normal(7))))
    mat = rng.standard_normal((2048, 512)) + 1j * rng.standard_normal((2048, 512))
    vec = rng.standard_normal(512) + 1j * rng.standard_normal(512)
    covec = rng.standard_normal(2048) + 1j * rng.standard_normal(2048)
    return [
        ("kahan_sum[4096]", lambda k: k.kahan_sum(x)),
        ("cauchy_product[4096x4096]", lambda k: k.cauchy_product(a, b, n)),
        ("long_division[8/8 -> 4096]", lambda k: k.long_division(num, den, n)),
        ("matvec[2048x512]", lambda k: k.matvec(mat, vec)),
        ("rmatvec[2048x512]", lambda k: k.rmatvec(mat, covec)),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(42)
    cases = _cases(rng)

    backends = [("pure", _kernels_py)]
    if _kernels_cy is not None:
        backends.append(("compiled", _kernels_cy))
    else:
        print("compiled backend unavailable; benchmarking pure backend only")

    width = max(len(name) for name, _ in cases)
    header = f"{'kernel':<{width}}  " + "  ".join(f"{n:>12}" for n, _ in backends)
    if len(backends) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, call in cases:
        times = [_best_of(lambda k=kmod: call(k), args.repeat) for _, kmod in backends]
        cells = "  ".join(f"{t * 1e3:>10.3f}ms" for t in times)
        line = f"{name:<{width}}  {cells}"
        if len(times) == 2 and times[1] > 0:
            line += f"  {times[0] / times[1]:>7.2f}x"
        print(line)


if __name__ == "__main__":
    main()
