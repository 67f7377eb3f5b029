"""Generic descent search.

The central object is a :class:`DescentStructure`: a carrier with decidable
equality, apartness (positive inequality) and a strict relation, plus an
optional *search capability*.  A search consumes a *step oracle*: at the
current element the oracle either presents evidence (:class:`Found`) or
names a strictly smaller element to continue from (:class:`Descend`).

The engine never trusts the oracle: every proposed descent is checked
against the structure's strict relation before it is followed, so a search
that terminates did in fact walk a strictly decreasing chain.  On the
naturals a chain starting at ``x0`` has at most ``x0 + 1`` elements, which
bounds the number of oracle invocations; :func:`nat_search` asserts that
bound.  Structures built by :mod:`descent.combinators` derive total search
capabilities compositionally; raw caller-built structures fall back to a
fuel-bounded loop.

Every search produces a :class:`DescentTrace` recording each element the
oracle was consulted at, auditable after the fact with
:func:`verify_trace` and serializable as a line-delimited JSON record.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Callable, Optional, Tuple, Union

Element = Any
BinOracle = Callable[[Element, Element], bool]

#: Step budget for raw structures without a derived search capability.
DEFAULT_FUEL = 1 << 20


@dataclass(frozen=True)
class Found:
    """The oracle's positive answer: evidence holds at ``witness``."""

    witness: Element


@dataclass(frozen=True)
class Descend:
    """The oracle's backward step: continue from the strictly smaller ``target``."""

    target: Element


StepOutcome = Union[Found, Descend]
StepOracle = Callable[[Element], StepOutcome]
SearchFn = Callable[[Element, StepOracle], Tuple[Element, "DescentTrace"]]


class SearchError(Exception):
    """Base class for search failures; carries the partial trace when available."""

    def __init__(self, message: str, trace: Optional["DescentTrace"] = None):
        super().__init__(message)
        self.trace = trace


class NonDecreasingStep(SearchError):
    """A Descend proposed an element that is not strictly smaller."""

    def __init__(self, current: Element, proposed: Element, trace=None):
        super().__init__(f"step proposed {proposed!r} which is not below {current!r}", trace)
        self.current = current
        self.proposed = proposed


class FuelExhausted(SearchError):
    """The caller-supplied step budget ran out (raw structures only)."""

    def __init__(self, fuel: int, trace=None):
        super().__init__(f"step budget of {fuel} exhausted", trace)
        self.fuel = fuel


class SearchDefect(SearchError):
    """An internal guarantee was violated; indicates a bug, not a caller error."""


@dataclass(frozen=True)
class DescentStructure:
    """A carrier with decidable comparisons and an optional search capability.

    ``eq``/``apart``/``less`` are pure binary oracles over opaque elements.
    Expected laws (validated by sampling, not assumed): ``eq`` is an
    equivalence, ``apart`` excludes ``eq``, ``less`` is extensional and
    irreflexive.  ``search`` is the structure's total search procedure when
    one is derivable; ``None`` means searches use a fuel-bounded fallback.
    ``strong`` claims less implies apart; ``dichotomous`` claims apart
    implies comparability.  Claims are advisory and checkable via
    :func:`descent.combinators.check_strong` / ``check_dichotomous``.
    """

    carrier_name: str
    eq: BinOracle
    apart: BinOracle
    less: BinOracle
    search: Optional[SearchFn] = None
    show: Callable[[Element], str] = str
    strong: bool = False
    dichotomous: bool = False
    samples: tuple = ()


@dataclass(frozen=True)
class DescentTrace:
    """Audit record of one search: every element the step oracle saw, in order.

    ``outcome`` is the final :class:`Found` or, for failed searches, the
    error tag as a string.  ``steps`` equals ``len(visited)``: one oracle
    invocation per visited element.
    """

    carrier: str
    visited: tuple
    outcome: Union[Found, str]
    steps: int

    def json_line(self, show: Callable[[Element], str] = str) -> str:
        """Line-delimited JSON form; element rendering is structure-specific."""
        if isinstance(self.outcome, Found):
            outcome = {"found": show(self.outcome.witness)}
        else:
            outcome = {"error": self.outcome}
        return json.dumps(
            {
                "carrier": self.carrier,
                "visited": [show(v) for v in self.visited],
                "outcome": outcome,
                "steps": self.steps,
            }
        )


def run_steps(
    structure: DescentStructure,
    start: Element,
    step: StepOracle,
    fuel: Optional[int] = None,
) -> Tuple[Element, DescentTrace]:
    """Drive a step oracle from ``start``, checking strict descent at each move.

    This is the raw engine loop behind every derived search capability.
    ``fuel`` bounds the number of oracle invocations; ``None`` means
    unbounded (safe only when the structure's relation is well-founded).
    """
    visited: list = []
    current = start

    def partial(tag: str) -> DescentTrace:
        return DescentTrace(structure.carrier_name, tuple(visited), tag, len(visited))

    while True:
        if fuel is not None and len(visited) >= fuel:
            raise FuelExhausted(fuel, partial("FuelExhausted"))
        visited.append(current)
        outcome = step(current)
        if isinstance(outcome, Found):
            trace = DescentTrace(
                structure.carrier_name, tuple(visited), outcome, len(visited)
            )
            return outcome.witness, trace
        if not isinstance(outcome, Descend):
            raise SearchDefect(
                f"step oracle returned {outcome!r}, expected Found or Descend",
                partial("SearchDefect"),
            )
        proposed = outcome.target
        if not structure.less(proposed, current):
            raise NonDecreasingStep(current, proposed, partial("NonDecreasingStep"))
        current = proposed


def search(
    structure: DescentStructure,
    start: Element,
    step: StepOracle,
    fuel: Optional[int] = None,
) -> Tuple[Element, DescentTrace]:
    """Search ``structure`` from the witness ``start``.

    The caller guarantees ``start`` is in the step oracle's domain; the
    engine never evaluates that side condition itself.  Structures with a
    derived search capability use it (and never exhaust); raw structures
    run the fuel-bounded fallback loop.
    """
    if structure.search is not None:
        return structure.search(start, step)
    return run_steps(structure, start, step, DEFAULT_FUEL if fuel is None else fuel)


def verify_trace(structure: DescentStructure, trace: DescentTrace) -> bool:
    """Audit a trace: strict descent between consecutive elements, consistent outcome.

    Pure check; never raises.  Error-outcome traces verify as long as the
    walked prefix descended strictly.
    """
    if trace.steps != len(trace.visited) or not trace.visited:
        return False
    for prev, nxt in zip(trace.visited, trace.visited[1:]):
        if not structure.less(nxt, prev):
            return False
    if isinstance(trace.outcome, Found):
        return bool(structure.eq(trace.outcome.witness, trace.visited[-1]))
    return isinstance(trace.outcome, str)


def _nat_less(a: Element, b: Element) -> bool:
    # Guards the carrier: nothing is below 0, and non-naturals are never below.
    return isinstance(a, int) and isinstance(b, int) and 0 <= a < b


_NAT_SKELETON = DescentStructure(
    carrier_name="nat",
    eq=lambda a, b: a == b,
    apart=lambda a, b: a != b,
    less=_nat_less,
)


def nat_search(start: int, step: StepOracle) -> Tuple[int, DescentTrace]:
    """Search the naturals from ``start``; at most ``start + 1`` oracle calls.

    At 0 the oracle must answer Found, since no natural is below 0; a
    Descend there is rejected as a non-decreasing step.  The step bound is
    asserted after the fact and a violation raises :class:`SearchDefect`
    (impossible while strict descent is enforced).
    """
    if not isinstance(start, int) or start < 0:
        raise ValueError(f"start must be a natural number, got {start!r}")
    found, trace = run_steps(_NAT_SKELETON, start, step, fuel=None)
    if trace.steps > start + 1:
        raise SearchDefect(
            f"descent from {start} took {trace.steps} steps, above the {start + 1} bound",
            trace,
        )
    return found, trace
