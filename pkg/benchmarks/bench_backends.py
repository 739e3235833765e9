"""Compare the compiled kernel against the pure-Python twin.

Covers the two kernel entry points (composition enumeration, integer
convolution) and the end-to-end power scan that drives them.  Both backends
are timed in one process by swapping the functions the engine dispatches
through, so the numbers differ only in kernel implementation.

Usage: python benchmarks/bench_backends.py [--quick]
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from su2haar import _kernel, _kernel_py
from su2haar.integrals import clear_cache
from su2haar.powers import FiniteFunction, power_scan

try:
    from su2haar import _kernel_c
except ImportError:
    _kernel_c = None


def timed(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_enumeration(kernel, pmax):
    ms = [4, -4, 2, -2, 0]
    ns = [-4, 4, -2, 2, 0]

    def run():
        for p in range(1, pmax + 1):
            kernel.balanced_compositions(ms, ns, p, 0, 0)

    return timed(run)


def bench_convolution(kernel, rounds):
    vec = [((-1) ** i) * (i ** 3 + 1) for i in range(33)]

    def run():
        for _ in range(rounds):
            kernel.convolve(kernel.vec_pow(vec, 2), vec)

    return timed(run)


def bench_power_scan(impl, pmax):
    f = FiniteFunction.from_terms(
        [
            ((2, 2, -2), (1, 0)),
            ((2, -2, 2), (Fraction(1, 2), 0)),
            ((2, 1, -1), (0, 1)),
            ((2, -1, 1), (1, 1)),
            ((2, 0, 0), (-2, 0)),
        ]
    )
    saved = (_kernel.convolve, _kernel.vec_pow, _kernel.balanced_compositions)
    _kernel.convolve = impl.convolve
    _kernel.vec_pow = impl.vec_pow
    _kernel.balanced_compositions = impl.balanced_compositions
    try:
        def run():
            clear_cache()
            power_scan(f, pmax)

        return timed(run, repeat=2)
    finally:
        _kernel.convolve, _kernel.vec_pow, _kernel.balanced_compositions = saved
        clear_cache()


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="small sizes, for smoke testing")
    ns = parser.parse_args(argv)

    pmax = 6 if ns.quick else 16
    rounds = 20 if ns.quick else 400

    backends = [("pure", _kernel_py)]
    if _kernel_c is not None:
        backends.append(("c", _kernel_c))
    else:
        print("note: compiled kernel not built; benchmarking pure only", file=sys.stderr)

    print(f"{'benchmark':<34}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'speedup':>10}")
    rows = [
        (f"enumeration k=5 pmax={pmax}", lambda impl: bench_enumeration(impl, pmax)),
        (f"convolution chain x{rounds}", lambda impl: bench_convolution(impl, rounds)),
        (f"power_scan k=5 pmax={pmax} (cold)", lambda impl: bench_power_scan(impl, pmax)),
    ]
    for label, bench in rows:
        times = [bench(impl) for _, impl in backends]
        cells = "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        speedup = f"{times[0] / times[-1]:>9.1f}x" if len(times) > 1 else f"{'n/a':>10}"
        print(f"{label:<34}{cells}{speedup}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
