"""Complemented subsets of the naturals and the least-element search.

A complemented subset is a pair of membership oracles: *provers* (positive
members) and *refuters* (positive non-members), required to be strongly
disjoint.  Totality (every number is decided one way or the other) is a
checkable property, not an assumption: the least-element search below
works for non-total subsets, which is the whole point of keeping both
oracles.

The key operation is :func:`locate`: at a prover ``x1`` it decides whether
everything in the subset's domain below ``x1`` refutes, or exhibits a
smaller prover.  Feeding that answer to the descent engine as a step
oracle yields :func:`clnp_least`, which finds the least prover; the
converse construction :func:`locator_from_least` rebuilds a locator from a
least-element certificate, so having a least element and being locatable
are interchangeable capabilities.

Oracles are black boxes, so disjointness and least-ness are checked
exhaustively on a finite bound rather than proven; certificates record the
verified range.  An oracle may raise :class:`UndecidableOracle` to model a
membership question with no effective answer (see :func:`pem_example`);
:func:`locate` surfaces that as :class:`NotLocatable`, which is exactly
why the locatability hypothesis is needed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Tuple, Union

from .engine import Descend, DescentTrace, Found
from .engine import nat_search

MemberOracle = Callable[[int], bool]

DEFAULT_CHECK_BOUND = 1024


class UndecidableOracle(Exception):
    """Raised by a membership oracle that cannot decide its argument."""


class MissingBound(Exception):
    """No enumeration bound available where one is required."""


class DisjointnessViolated(Exception):
    def __init__(self, witness: int):
        super().__init__(f"{witness} is both a prover and a refuter")
        self.witness = witness


class NotLocatable(Exception):
    """A domain point below the query could not be decided."""

    def __init__(self, point: int):
        super().__init__(f"membership at {point} is undecided")
        self.point = point


class LeastViolated(Exception):
    """A prover below the certified least element: the certificate is invalid."""

    def __init__(self, mu: int, x1: int):
        super().__init__(f"prover {x1} lies below the certified least element {mu}")
        self.mu = mu
        self.x1 = x1


class NotMonotone(Exception):
    def __init__(self, pair: Tuple[int, int]):
        super().__init__(f"function is not strictly monotone at {pair}")
        self.pair = pair


class OntoWitnessInvalid(Exception):
    def __init__(self, witness: int, expected: int):
        super().__init__(f"onto-witness {witness} does not map to {expected}")
        self.witness = witness
        self.expected = expected


@dataclass(frozen=True)
class ExtensionalSubset:
    """A subset of the naturals given by a pure membership oracle.

    ``bound``, when present, is the largest value the subset may contain
    (finitely describable subsets only).  ``description`` carries the
    source expression when the subset came from the predicate language.
    """

    member: MemberOracle
    bound: Optional[int] = None
    description: str = ""


def subset_from_values(values: Iterable[int], description: str = "") -> ExtensionalSubset:
    """Finite subset backed by a frozen set; bound is its maximum."""
    frozen = frozenset(values)
    bound = max(frozen) if frozen else 0
    return ExtensionalSubset(lambda x: x in frozen, bound, description or f"{sorted(frozen)}")


def check_enumeration_bound(subset: ExtensionalSubset, slack: int = 64) -> Optional[int]:
    """First member above the declared bound, probing up to bound + slack.

    None when the declared bound holds on the probed range (or none is
    declared).  A witness means the subset was constructed with a wrong
    bound.
    """
    if subset.bound is None:
        return None
    for x in range(subset.bound + 1, subset.bound + slack + 1):
        if subset.member(x):
            return x
    return None


@dataclass(frozen=True)
class ComplementedSubset:
    """A prover/refuter oracle pair with a strong-disjointness contract.

    ``check_bound`` fixes the range for exhaustive checks; when absent it
    defaults to the largest subset bound available, else 1024.
    ``domain_candidates``, when given, maps an exclusive upper limit to an
    ascending iterable that contains every domain element below it; scans
    use it instead of the full range.  It is a completeness hint only:
    membership is still decided by the oracles.
    """

    provers: ExtensionalSubset
    refuters: ExtensionalSubset
    check_bound: Optional[int] = None
    domain_candidates: Optional[Callable[[int], Iterable[int]]] = None

    def bound_for_checks(self) -> int:
        if self.check_bound is not None:
            return self.check_bound
        bounds = [b for b in (self.provers.bound, self.refuters.bound) if b is not None]
        return max(bounds) if bounds else DEFAULT_CHECK_BOUND

    def in_domain(self, x: int) -> bool:
        return self.provers.member(x) or self.refuters.member(x)

    def _scan(self, upper: int) -> Iterable[int]:
        if self.domain_candidates is not None:
            return self.domain_candidates(upper)
        return range(upper)

    def check_disjoint(self, bound: Optional[int] = None) -> None:
        """Raise :class:`DisjointnessViolated` at the first common element.

        Undecidable points are skipped: a violation witness needs both
        memberships to answer True, which an undecided oracle cannot do.
        """
        limit = self.bound_for_checks() if bound is None else bound
        for x in self._scan(limit + 1):
            try:
                if self.provers.member(x) and self.refuters.member(x):
                    raise DisjointnessViolated(x)
            except UndecidableOracle:
                continue

    def first_total_gap(self, bound: Optional[int] = None) -> Optional[int]:
        """Smallest undecided value up to the bound, or None if total there."""
        limit = self.bound_for_checks() if bound is None else bound
        for x in range(limit + 1):
            if not self.in_domain(x):
                return x
        return None


@dataclass(frozen=True)
class IncludedInRefuters:
    """Everything in the domain below the queried prover refutes."""


@dataclass(frozen=True)
class Overlap:
    """A strictly smaller prover; ``witness`` satisfies both conjuncts."""

    witness: int


LocatednessAnswer = Union[IncludedInRefuters, Overlap]


@dataclass(frozen=True)
class LeastElementCert:
    """A certified least element.

    ``mu`` proves, and every domain element below ``mu`` refutes; the
    universal clause was verified for all values up to ``verified_bound``
    (it is vacuous above ``mu``, so any bound at least ``mu - 1`` attests
    the same finite claim; the gap to the unbounded statement is
    inherent to black-box oracles).
    """

    mu: int
    verified_bound: int
    trace: DescentTrace

    def to_json(self) -> str:
        return json.dumps(
            {
                "mu": self.mu,
                "verified_bound": self.verified_bound,
                "trace": json.loads(self.trace.json_line()),
            }
        )


def strong_complement(A: ExtensionalSubset, bound: Optional[int] = None) -> ExtensionalSubset:
    """The subset of points apart from every member of ``A``.

    On the naturals apartness is negated equality, so membership is just
    the negation of ``A``'s oracle, and the weaker complement (points not
    provably equal to any member) coincides with this one; the
    distinction only matters for carriers with a coarser inequality.  A
    bound is still required (from ``A`` or the caller) because the
    complement is only usable paired with ``A`` over a finite check
    range.  The complement itself is cofinite, hence carries no
    enumeration bound.
    """
    working = bound if bound is not None else A.bound
    if working is None:
        raise MissingBound("complement needs an enumeration bound")
    desc = f"complement of ({A.description})" if A.description else "complement"
    return ExtensionalSubset(lambda x: not A.member(x), None, desc)


def overlaps(A: ExtensionalSubset, B: ExtensionalSubset, bound: int) -> Optional[int]:
    """Smallest common element up to ``bound``, or None."""
    for x in range(bound + 1):
        if A.member(x) and B.member(x):
            return x
    return None


def downset(bold_A: ComplementedSubset, x: int) -> ExtensionalSubset:
    """Domain elements of the pair strictly below ``x``."""
    return ExtensionalSubset(
        lambda y: y < x and bold_A.in_domain(y),
        max(x - 1, 0),
        f"domain below {x}",
    )


def locate(bold_A: ComplementedSubset, x1: int) -> LocatednessAnswer:
    """Decide the downset of the prover ``x1``: all-refuters or a smaller prover.

    Scans the domain below ``x1`` in ascending order and returns the
    smallest prover found (making descents canonical: they land one step
    from the least element); otherwise every domain element below ``x1``
    was verified to refute.  An oracle that cannot decide some point makes
    the subset non-locatable there.
    """
    if not bold_A.provers.member(x1):
        raise ValueError(f"{x1} is not a prover; locate is defined at provers only")
    for y in bold_A._scan(x1):
        try:
            if bold_A.provers.member(y):
                return Overlap(y)
            bold_A.refuters.member(y)  # domain check; value unused beyond decidability
        except UndecidableOracle:
            raise NotLocatable(y) from None
    return IncludedInRefuters()


def clnp_least(bold_A: ComplementedSubset, a1: int) -> LeastElementCert:
    """Least element of an inhabited, locatable complemented subset.

    Descends from the prover ``a1``, at each prover asking :func:`locate`:
    an all-refuters answer is the evidence that the current prover is
    least; an overlap is a strictly smaller prover to continue from.  The
    engine bounds the run by ``a1 + 1`` oracle calls.  At ``a1 = 0`` the
    answer is immediate (nothing lies below 0) and the locator is never
    consulted.
    """
    if not bold_A.provers.member(a1):
        raise ValueError(f"{a1} is not a prover; clnp_least needs an inhabitant of the provers")
    bold_A.check_disjoint()
    verified = max(bold_A.bound_for_checks(), a1)
    if a1 == 0:
        trace = DescentTrace("nat", (0,), Found(0), 1)
        return LeastElementCert(0, verified, trace)

    def step(x: int):
        answer = locate(bold_A, x)
        if isinstance(answer, Overlap):
            return Descend(answer.witness)
        return Found(x)

    mu, trace = nat_search(a1, step)
    return LeastElementCert(mu, verified, trace)


def locator_from_least(
    bold_A: ComplementedSubset, cert: LeastElementCert, x1: int
) -> LocatednessAnswer:
    """Rebuild the locate answer at a prover from a least-element certificate.

    Every prover sits at or above the least element; at it the downset
    refutes, above it the least element itself is the overlap witness.  A
    prover below the certificate refutes the certificate.
    """
    if not bold_A.provers.member(x1):
        raise ValueError(f"{x1} is not a prover")
    if x1 < cert.mu:
        raise LeastViolated(cert.mu, x1)
    if x1 == cert.mu:
        return IncludedInRefuters()
    return Overlap(cert.mu)


def check_least_uniqueness(bold_A: ComplementedSubset, mu: int, nu: int) -> bool:
    """Two certified least elements must coincide; False flags a defect."""
    return mu == nu


def preimage(f: Callable[[int], int], bold_B: ComplementedSubset) -> ComplementedSubset:
    """Pull a complemented subset back along a total function.

    Provers and refuters compose with ``f``; strong disjointness is
    preserved (a common preimage point would map to a common element).
    The result carries no enumeration bound or candidate hint, since
    neither transports through an arbitrary ``f``.
    """
    return ComplementedSubset(
        ExtensionalSubset(lambda x: bold_B.provers.member(f(x)), None, "preimage provers"),
        ExtensionalSubset(lambda x: bold_B.refuters.member(f(x)), None, "preimage refuters"),
        check_bound=bold_B.bound_for_checks(),
    )


def preimage_locator(
    f: Callable[[int], int],
    bold_B: ComplementedSubset,
    locate_B: Callable[[int], LocatednessAnswer],
    onto_B1: Callable[[int], int],
    bound: Optional[int] = None,
) -> Callable[[int], LocatednessAnswer]:
    """Locator for the preimage pair, given one for the original.

    Requires ``f`` strictly monotone (checked on the working range up
    front, and re-checked on the witnesses it produces) and onto the
    provers: ``onto_B1`` must send each prover ``u`` to some ``w`` with
    ``f(w) = u``.  An all-refuters answer pulls back directly; an overlap
    witness pulls back through ``onto_B1``, and strict monotonicity puts
    it below the queried point.
    """
    working = bound if bound is not None else bold_B.bound_for_checks()
    for x in range(working):
        if not f(x) < f(x + 1):
            raise NotMonotone((x, x + 1))

    def located(x1: int) -> LocatednessAnswer:
        answer = locate_B(f(x1))
        if isinstance(answer, IncludedInRefuters):
            return IncludedInRefuters()
        u1 = answer.witness
        w = onto_B1(u1)
        if f(w) != u1:
            raise OntoWitnessInvalid(w, u1)
        if not w < x1:
            raise NotMonotone((w, x1))
        return Overlap(w)

    return located


def pem_example() -> ComplementedSubset:
    """The classic non-locatable pair: membership of 0 hinges on an open question.

    Provers are {1} plus 0-if-some-undecided-proposition-holds; refuters
    are everything from 2 up plus 0-if-it-fails.  The pair is strongly
    disjoint, but deciding the downset of the prover 1 would decide the
    proposition, so the oracle at 0 raises :class:`UndecidableOracle` and
    :func:`locate` answers :class:`NotLocatable`.  Kept as a documented
    stub: it demonstrates why locatability is a real hypothesis, and it is
    exercised only for the error path.
    """

    def prover(x: int) -> bool:
        if x == 0:
            raise UndecidableOracle("0 proves only if the open proposition holds")
        return x == 1

    def refuter(x: int) -> bool:
        if x == 0:
            raise UndecidableOracle("0 refutes only if the open proposition fails")
        return x >= 2

    return ComplementedSubset(
        ExtensionalSubset(prover, None, "{1} plus 0 if the open proposition holds"),
        ExtensionalSubset(refuter, None, "{2, 3, ...} plus 0 if it fails"),
        check_bound=8,
    )
