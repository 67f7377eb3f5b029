#!/usr/bin/env python3
"""Compare the compiled and pure-Python arithmetic kernels.

Times the two hot loops over a sweep of inputs: smallest-proper-divisor
(ascending trial division, the cost center of the prime classification)
and square-root primality.  Run after an editable install:

    python3 benchmarks/bench_kernels.py [--limit 20000] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

from descent.kernels import _purepy

try:
    from descent.kernels import _core
except ImportError:
    _core = None


def time_sweep(fn, limit: int, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        started = time.perf_counter()
        for n in range(2, limit + 1):
            fn(n)
        best = min(best, time.perf_counter() - started)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--limit", type=int, default=20000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = [("pure-python", _purepy)]
    if _core is not None:
        backends.append(("compiled", _core))
    else:
        print("note: compiled kernel not built; showing pure-python only")

    rows = []
    for kernel_name in ("smallest_proper_divisor", "is_prime"):
        timings = {}
        for backend_name, module in backends:
            timings[backend_name] = time_sweep(
                getattr(module, kernel_name), args.limit, args.repeat
            )
        rows.append((kernel_name, timings))

    width = max(len(name) for name, _ in rows)
    print(f"sweep over [2, {args.limit}], best of {args.repeat}")
    print(f"{'kernel'.ljust(width)}  {'pure-python':>12}  {'compiled':>12}  {'speedup':>8}")
    for name, timings in rows:
        pure = timings["pure-python"]
        if "compiled" in timings:
            comp = timings["compiled"]
            print(f"{name.ljust(width)}  {pure:>11.3f}s  {comp:>11.3f}s  {pure / comp:>7.1f}x")
        else:
            print(f"{name.ljust(width)}  {pure:>11.3f}s  {'-':>12}  {'-':>8}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
