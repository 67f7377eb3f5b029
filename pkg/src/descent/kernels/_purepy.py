"""Pure-Python arithmetic kernels (fallback when the compiled core is absent)."""

from math import isqrt

BACKEND = "pure-python"


def smallest_proper_divisor(x: int) -> int:
    """First divisor of ``x`` in 2..x-1 (ascending trial division), or 0 if none.

    A return of 0 means ``x`` has no proper divisor: ``x`` is prime, or x <= 1.
    """
    if x <= 1:
        return 0
    for d in range(2, x):
        if x % d == 0:
            return d
    return 0


def is_prime(x: int) -> bool:
    """Trial division up to sqrt(x). Verification-side primality check."""
    if x < 2:
        return False
    for d in range(2, isqrt(x) + 1):
        if x % d == 0:
            return False
    return True
