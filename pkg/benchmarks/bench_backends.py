#!/usr/bin/env python3
"""Compare the compiled kernels against the pure-Python fallback.

Run:  python benchmarks/bench_backends.py [--quick]

Covers the four hot loops: Monte Carlo expression trials, multigraph-process
sampling, exhaustive oracle scans, and one prime's worth of the modular
coefficient chain used by the exact censuses at scale.
"""

import argparse
import time

from twoxor.kernels import pure
from twoxor.numutil import primes_above

try:
    from twoxor.kernels import _fast
except ImportError:
    _fast = None


def timed(fn, *args, repeat=1):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true", help="smaller workloads")
    args = ap.parse_args()

    scale = 10 if args.quick else 1
    prime = primes_above(1 << 61, 1)[0]
    cases = [
        ("mc_expression_trials (n=100, m=40)",
         "mc_expression_trials", (100, 40, 0, 20000 // scale, 7)),
        ("mc_multigraph_trials (n=2, m=2)",
         "mc_multigraph_trials", (2, 2, 0, 100000 // scale, 7)),
        ("oracle_scan (n=3, m=3)",
         "oracle_scan", (3, 3, 0, 46656 // scale)),
        ("chain_mod pow sigma=1/2 (m=60, v=120), one prime",
         "chain_mod", (0, 1, 2, 60, 120, prime, [(60, 120)])),
        ("chain_mod log (m=60, v=60), one prime",
         "chain_mod", (1, 1, 1, 60, 60, prime, [(60, 60)])),
    ]

    print(f"{'kernel':55s} {'pure':>10s} {'cython':>10s} {'speedup':>8s}")
    for label, name, call_args in cases:
        t_pure, r_pure = timed(getattr(pure, name), *call_args)
        if _fast is None:
            print(f"{label:55s} {t_pure:>9.3f}s {'n/a':>10s} {'':>8s}")
            continue
        t_fast, r_fast = timed(getattr(_fast, name), *call_args)
        assert r_pure == r_fast, f"backend mismatch in {label}"
        print(f"{label:55s} {t_pure:>9.3f}s {t_fast:>9.3f}s "
              f"{t_pure / t_fast:>7.1f}x")
    if _fast is None:
        print("\ncompiled backend unavailable; install with Cython to compare")


if __name__ == "__main__":
    main()
