"""Shared independent oracles for the test suite.

These deliberately avoid the library's own code paths: the sieve, the
brute-force minimum, and the linear scans are the reference answers the
implementations are checked against.
"""

from __future__ import annotations

from typing import Callable, List


def sieve_smallest_prime_factor(limit: int) -> List[int]:
    """spf[n] for 0 <= n <= limit, by a plain sieve (spf[0] = 0, spf[1] = 1)."""
    spf = list(range(limit + 1))
    p = 2
    while p * p <= limit:
        if spf[p] == p:
            for m in range(p * p, limit + 1, p):
                if spf[m] == m:
                    spf[m] = p
        p += 1
    return spf


def brute_force_min(member: Callable[[int], bool], bound: int) -> int:
    """Smallest x <= bound with member(x); raises if none."""
    for x in range(bound + 1):
        if member(x):
            return x
    raise AssertionError("no member below the bound")


def linear_scan_non_descent(alpha: Callable[[int], int]) -> int:
    """First i with alpha(i) <= alpha(i + 1)."""
    i = 0
    while alpha(i) > alpha(i + 1):
        i += 1
    return i


def proper_divisors(n: int) -> List[int]:
    """Ascending divisors d of n with 1 < d < n, by exhaustive scan."""
    return [d for d in range(2, n) if n % d == 0]


def is_prime_by_enumeration(n: int) -> bool:
    return n > 1 and not proper_divisors(n)
