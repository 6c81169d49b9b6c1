"""Compare the compiled and pure-Python arithmetic kernels.

Run with ``python3 benchmarks/bench_kernels.py``. Each workload is checked for
identical output before it is timed.
"""
from __future__ import annotations

import argparse
import random
import timeit
from fractions import Fraction

from superwp.exactcore import _pykernel

try:
    from superwp.exactcore import _ckernel
except ImportError:
    _ckernel = None


def random_poly(rng: random.Random, nterms: int, nvars: int, degree: int) -> dict:
    out = {}
    while len(out) < nterms:
        key = tuple(rng.randint(0, degree) for _ in range(nvars))
        out[key] = Fraction(rng.randint(-50, 50) or 1, rng.randint(1, 30))
    return out


def workloads(rng: random.Random):
    a, b = random_poly(rng, 150, 4, 6), random_poly(rng, 150, 4, 6)
    yield "sparse_mul 150x150, 4 vars", "sparse_mul", (a, b, ())
    limits = (((1, 1, 1, 1), 10),)
    yield "sparse_mul truncated", "sparse_mul", (a, b, limits)
    yield "sparse_add", "sparse_add", (a, b, Fraction(-3, 7))
    u = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(200)]
    v = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(200)]
    yield "convolve length 200", "convolve", (u, v, 200)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args(argv)
    if _ckernel is None:
        print("compiled kernel not built; only the Python timings are shown")
    rng = random.Random(args.seed)
    print(f"{'workload':32} {'python (ms)':>12} {'cython (ms)':>12} {'speedup':>8}")
    for label, name, call_args in workloads(rng):
        py = getattr(_pykernel, name)
        t_py = min(timeit.repeat(lambda: py(*call_args), number=1, repeat=args.repeat))
        if _ckernel is None:
            print(f"{label:32} {1e3 * t_py:12.2f} {'-':>12} {'-':>8}")
            continue
        cy = getattr(_ckernel, name)
        if cy(*call_args) != py(*call_args):
            raise SystemExit(f"{label}: backends disagree")
        t_cy = min(timeit.repeat(lambda: cy(*call_args), number=1, repeat=args.repeat))
        print(f"{label:32} {1e3 * t_py:12.2f} {1e3 * t_cy:12.2f} {t_py / t_cy:7.2f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
