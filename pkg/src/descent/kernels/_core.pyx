# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled arithmetic kernels: the hot trial-division loops.

Same contracts as kernels._purepy; inputs are limited to 64-bit
non-negative integers (desk scale).
"""

BACKEND = "compiled"


def smallest_proper_divisor(x):
    """First divisor of ``x`` in 2..x-1 (ascending trial division), or 0 if none."""
    cdef unsigned long long n, d
    if x <= 1:
        return 0
    n = x
    d = 2
    while d < n:
        if n % d == 0:
            return d
        d += 1
    return 0


def is_prime(x):
    """Trial division up to sqrt(x). Verification-side primality check."""
    cdef unsigned long long n, d
    if x < 2:
        return False
    n = x
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True
