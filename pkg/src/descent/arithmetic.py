"""Prime-divisor extraction by descent and by least-element search.

A number above 1 is either prime or has a proper divisor; the proper
divisor of a divisor is again a divisor, so descending through proper
divisors must bottom out at a prime divisor.  Two routes compute it:

* :func:`prime_divisor_descent` runs that descent directly, with the
  smallest proper divisor as the deterministic tie-break, which makes
  the result provably the smallest prime factor, a crisp test oracle.
* :func:`prime_divisor_clnp` builds the complemented subset whose provers
  are the composite divisors and whose refuters are the prime divisors,
  finds its least element ``mu`` by the least-element search, and takes
  the smallest proper divisor of ``mu``, which lands below ``mu`` among
  the divisors and is therefore prime.

Both routes verify their answer against the independent square-root
trial-division oracle before returning.  Divisor enumeration and
classification use the compiled kernels when available; 64-bit inputs
only, no probabilistic primality.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import List, Union

from . import kernels
from .complemented import ComplementedSubset, ExtensionalSubset, clnp_least
from .engine import Descend, DescentTrace, Found, SearchDefect, nat_search


class OutOfDomain(Exception):
    """Prime/composite classification is defined above 1 only."""

    def __init__(self, value: int):
        super().__init__(f"{value} is outside the domain (need a value above 1)")
        self.value = value


@dataclass(frozen=True)
class Prime:
    """No proper divisor exists."""


@dataclass(frozen=True)
class Composite:
    """``witness`` divides the classified number and lies strictly between 1 and it."""

    witness: int


Classification = Union[Prime, Composite]


@dataclass(frozen=True)
class PrimeDivisorResult:
    p: int
    trace: DescentTrace
    method: str  # "descent" | "clnp"

    def to_json_dict(self, n: int) -> dict:
        return {
            "n": n,
            "p": self.p,
            "method": self.method,
            "trace": [str(v) for v in self.trace.visited],
        }


@lru_cache(maxsize=1 << 16)
def classify(x: int) -> Classification:
    """Prime, or Composite with the smallest proper divisor as witness.

    Ascending trial division over 2..x-1; the first divisor found is the
    witness (the deterministic tie-break for the descent).
    """
    if x <= 1:
        raise OutOfDomain(x)
    d = kernels.smallest_proper_divisor(x)
    return Prime() if d == 0 else Composite(d)


def is_prime_oracle(x: int) -> bool:
    """Independent verification oracle (trial division to the square root).

    Used only to check results, never to produce them.
    """
    return kernels.is_prime(x)


def _verified(n: int, p: int, trace: DescentTrace, method: str) -> PrimeDivisorResult:
    if not is_prime_oracle(p) or n % p != 0:
        raise SearchDefect(f"{method} produced {p}, not a prime divisor of {n}", trace)
    return PrimeDivisorResult(p, trace, method)


def prime_divisor_descent(n: int) -> PrimeDivisorResult:
    """A prime divisor of ``n``, by descent through proper divisors.

    A prime input answers itself with a one-node trace.  With the
    smallest-divisor tie-break the first descent already lands on a prime
    (the smallest divisor above 1 of anything is prime), so the result is
    the smallest prime factor of ``n``.
    """
    if n <= 1:
        raise OutOfDomain(n)

    def step(x: int):
        outcome = classify(x)
        if isinstance(outcome, Prime):
            return Found(x)
        return Descend(outcome.witness)

    p, trace = nat_search(n, step)
    return _verified(n, p, trace, "descent")


def divisors_between(n: int, lo: int, hi: int) -> List[int]:
    """Ascending divisors d of ``n`` with lo <= d < hi."""
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return [d for d in small + large[::-1] if lo <= d < hi]


def prime_subset(n: int) -> ComplementedSubset:
    """The complemented subset of divisors of ``n``: composite provers, prime refuters.

    The domain is exactly the divisors of ``n`` above 1, which the
    candidate hint enumerates directly; prime-or-composite decidability
    makes the pair locatable at every prover.
    """
    if n <= 1:
        raise OutOfDomain(n)

    def proves(x: int) -> bool:
        return 1 < x <= n and n % x == 0 and isinstance(classify(x), Composite)

    def refutes(x: int) -> bool:
        return 1 < x <= n and n % x == 0 and isinstance(classify(x), Prime)

    return ComplementedSubset(
        ExtensionalSubset(proves, n, f"composite divisors of {n}"),
        ExtensionalSubset(refutes, n, f"prime divisors of {n}"),
        check_bound=n,
        domain_candidates=lambda upper: divisors_between(n, 2, upper),
    )


def prime_divisor_clnp(n: int) -> PrimeDivisorResult:
    """A prime divisor of ``n``, through the least composite divisor.

    For composite ``n`` the subset of composite divisors is inhabited by
    ``n`` itself; its least element ``mu`` is composite, so its smallest
    proper divisor is a divisor of ``n`` below ``mu``, hence not a
    prover, hence prime.  A prime input short-circuits to itself, as in
    the descent route.  The two routes may pass through different
    intermediates (here ``mu``, e.g. 4 for n=12) but both end on a prime
    divisor.
    """
    if n <= 1:
        raise OutOfDomain(n)
    if isinstance(classify(n), Prime):
        trace = DescentTrace("nat", (n,), Found(n), 1)
        return _verified(n, n, trace, "clnp")
    cert = clnp_least(prime_subset(n), n)
    mu = cert.mu
    outcome = classify(mu)
    if not isinstance(outcome, Composite):
        raise SearchDefect(f"least element {mu} of the composite divisors is prime", cert.trace)
    return _verified(n, outcome.witness, cert.trace, "clnp")
