"""An algebra of searchable structures.

Each constructor here builds a new :class:`DescentStructure` whose search
capability is assembled from the factors' capabilities, so termination is
inherited rather than re-proven:

* :func:`pullback`: transport a search along a strongly extensional,
  relation-preserving map into a searchable structure;
* :func:`restrict`: the special case of an inclusion, with escape
  checking;
* :func:`product`: componentwise strict order; searching only needs the
  first factor searchable (the first projection preserves the order);
* :func:`coproduct`: tagged sums ordered left-below-right; a search
  started on the right may jump left at most once;
* :func:`lex_product`: lexicographic pairs; an inner second-factor
  search runs at a pinned first coordinate, widened so that a drop in the
  first coordinate surfaces as an inner success and restarts the outer
  search one level down;
* :func:`sigma`: dependent pairs over an :class:`IndexedFamily`, the
  same nesting as the lexicographic case with transport maps carrying
  elements between components at equal indices.

The inner widened searches tag their results internally (genuine evidence
vs. a jump witness); the public surface stays a plain step oracle, and
the emitted trace lists exactly the composed-carrier elements the caller's
oracle was consulted at, strictly decreasing in the composed order.

Strong/dichotomous markers on results are advisory claims validated by
sampling (:func:`check_strong`, :func:`check_dichotomous`), with the
propagation rules: products are strong when either factor is (with the
pair inequality used here, a componentwise drop itself witnesses
apartness); coproducts inherit strong and dichotomous from both factors;
lexicographic products inherit strong from both factors but are never
marked dichotomous: factor dichotomy does not give the composite's in
general, since deciding the first coordinates' equality is exactly what
an arbitrary carrier cannot offer; the converse direction, composite
dichotomous implies factors dichotomous, is checkable and tested;
sigma inherits both when the index and all sampled components carry them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Any, Callable, Iterable, Optional, Sequence, Tuple

from .engine import (
    Descend,
    DescentStructure,
    DescentTrace,
    Found,
    NonDecreasingStep,
    SearchDefect,
    StepOracle,
)
from .naturals import LawResult, nat_structure

Element = Any


class ContractViolated(Exception):
    """A map broke strong extensionality or relation preservation."""

    def __init__(self, pair: Tuple[Element, Element], detail: str = ""):
        super().__init__(f"map contract violated at {pair!r}" + (f": {detail}" if detail else ""))
        self.pair = pair


class EscapedSubset(Exception):
    """A step descended outside the restricted carrier."""

    def __init__(self, element: Element):
        super().__init__(f"step left the subset at {element!r}")
        self.element = element


class CoherenceViolated(Exception):
    """An indexed family's transports broke the identity or triangle law."""


@dataclass(frozen=True)
class RelPreservingMap:
    """A function with two sampled contracts: it reflects apartness and preserves order."""

    fn: Callable[[Element], Element]
    name: str = "f"


@dataclass(frozen=True)
class _RealEvidence:
    value: Element


@dataclass(frozen=True)
class _JumpWitness:
    value: Element


def check_map_contracts(
    f: RelPreservingMap,
    source: DescentStructure,
    target: DescentStructure,
    samples: Iterable[Element],
) -> None:
    """Check both contracts of ``f`` on all sample pairs; raise on a violation."""
    pts = list(samples)
    for a, b in itertools.product(pts, pts):
        fa, fb = f.fn(a), f.fn(b)
        if target.apart(fa, fb) and not source.apart(a, b):
            raise ContractViolated((a, b), "apartness of images does not reflect")
        if source.less(a, b) and not target.less(fa, fb):
            raise ContractViolated((a, b), "strict relation not preserved")


def pullback(
    z_data: DescentStructure,
    f: RelPreservingMap,
    X: DescentStructure,
    samples: Optional[Iterable[Element]] = None,
) -> DescentStructure:
    """Make ``z_data`` searchable by driving searches through ``f`` into ``X``.

    Each descent proposed on the source is checked against the source
    relation, then mirrored in ``X`` (legal exactly because ``f``
    preserves the relation; a mismatch at run time raises
    :class:`ContractViolated` with the offending pair).  The target's
    search supplies termination.  ``samples``, when given, validates the
    map's contracts eagerly.  Strongness is inherited from ``X``.
    """
    if X.search is None:
        raise ValueError(f"{X.carrier_name} has no search capability to pull back")
    if samples is not None:
        check_map_contracts(f, z_data, X, samples)
    fn = f.fn

    def derived_search(start: Element, step: StepOracle):
        visited: list = []

        def partial(tag: str) -> DescentTrace:
            return DescentTrace(z_data.carrier_name, tuple(visited), tag, len(visited))

        state = {"z": start}

        def lifted(_x: Element):
            z = state["z"]
            visited.append(z)
            outcome = step(z)
            if isinstance(outcome, Found):
                return Found(_RealEvidence(outcome.witness))
            z2 = outcome.target
            if not z_data.less(z2, z):
                raise NonDecreasingStep(z, z2, partial("NonDecreasingStep"))
            if not X.less(fn(z2), fn(z)):
                raise ContractViolated((z2, z), "strict relation not preserved")
            state["z"] = z2
            return Descend(fn(z2))

        tagged, _ = X.search(fn(start), lifted)
        found = tagged.value
        trace = DescentTrace(z_data.carrier_name, tuple(visited), Found(found), len(visited))
        return found, trace

    return DescentStructure(
        carrier_name=z_data.carrier_name,
        eq=z_data.eq,
        apart=z_data.apart,
        less=z_data.less,
        search=derived_search,
        show=z_data.show,
        strong=X.strong,
        dichotomous=z_data.dichotomous,
        samples=z_data.samples,
    )


def restrict(
    X: DescentStructure,
    member: Callable[[Element], bool],
    name: Optional[str] = None,
    samples: Optional[Sequence[Element]] = None,
) -> DescentStructure:
    """The substructure on ``member``, searchable via the inclusion into ``X``.

    Comparisons are unchanged; steps are additionally required to stay
    inside the subset (:class:`EscapedSubset` otherwise).  Both strongness
    and dichotomy restrict: the relations are the originals on fewer
    points.
    """
    sub_samples = (
        tuple(samples) if samples is not None else tuple(x for x in X.samples if member(x))
    )
    data = DescentStructure(
        carrier_name=name or f"{{x in {X.carrier_name} | member}}",
        eq=X.eq,
        apart=X.apart,
        less=X.less,
        show=X.show,
        strong=X.strong,
        dichotomous=X.dichotomous,
        samples=sub_samples,
    )
    inner = pullback(data, RelPreservingMap(lambda z: z, "inclusion"), X)

    def guarded_search(start: Element, step: StepOracle):
        def checked(z: Element):
            outcome = step(z)
            if isinstance(outcome, Descend) and not member(outcome.target):
                raise EscapedSubset(outcome.target)
            return outcome

        return inner.search(start, checked)

    return DescentStructure(
        carrier_name=data.carrier_name,
        eq=data.eq,
        apart=data.apart,
        less=data.less,
        search=guarded_search,
        show=data.show,
        strong=data.strong,
        dichotomous=data.dichotomous,
        samples=sub_samples,
    )


def booleans() -> DescentStructure:
    """The two-point structure 0 < 1, as a restriction of the naturals."""
    return restrict(nat_structure(), lambda x: x in (0, 1), name="bool", samples=(0, 1))


def product(X: DescentStructure, Y: DescentStructure) -> DescentStructure:
    """Pairs under the componentwise strict order.

    Only the first factor needs a search capability: the first projection
    preserves the componentwise order, so searching is a pullback along
    it.  The pair inequality is first-apart-or-second-below; with it, a
    componentwise drop is itself apartness evidence, so the product is
    marked strong whenever either factor is.  It is not marked
    dichotomous: pairs such as (0,1) and (1,0) are apart yet incomparable.
    """
    if X.search is None:
        raise ValueError("product needs the first factor searchable")

    def eq(p, q):
        return X.eq(p[0], q[0]) and Y.eq(p[1], q[1])

    def apart(p, q):
        return X.apart(p[0], q[0]) or Y.less(p[1], q[1])

    def less(p, q):
        return X.less(p[0], q[0]) and Y.less(p[1], q[1])

    data = DescentStructure(
        carrier_name=f"({X.carrier_name} x {Y.carrier_name})",
        eq=eq,
        apart=apart,
        less=less,
        show=lambda p: f"({X.show(p[0])},{Y.show(p[1])})",
        strong=X.strong or Y.strong,
        dichotomous=False,
        samples=tuple(itertools.product(X.samples, Y.samples)),
    )
    first = RelPreservingMap(lambda p: p[0], "first projection")
    built = pullback(data, first, X)
    # The pullback rule only inherits strongness from the first factor;
    # for the pair order either factor suffices.
    return replace(built, strong=data.strong)


def coproduct(X: DescentStructure, Y: DescentStructure) -> DescentStructure:
    """Tagged sums ``(0, x)`` / ``(1, y)`` with the left summand below the right.

    A search starting on the left never leaves it (nothing on the right is
    below).  A search starting on the right runs the second factor's
    search widened: a caller step that jumps left is a legal descent
    (left is below right everywhere) and ends the right-hand phase, whose
    witness then seeds a left-hand search.  At most one crossing can
    occur.  Strong and dichotomous hold when both factors have them.
    """
    if X.search is None or Y.search is None:
        raise ValueError("coproduct needs both summands searchable")
    summands = (X, Y)

    def eq(w, v):
        return w[0] == v[0] and summands[w[0]].eq(w[1], v[1])

    def apart(w, v):
        if w[0] != v[0]:
            return True
        return summands[w[0]].apart(w[1], v[1])

    def less(w, v):
        if w[0] != v[0]:
            return w[0] < v[0]
        return summands[w[0]].less(w[1], v[1])

    def show(w):
        return ("inl " if w[0] == 0 else "inr ") + summands[w[0]].show(w[1])

    name = f"({X.carrier_name} + {Y.carrier_name})"

    def derived_search(start: Element, step: StepOracle):
        visited: list = []

        def partial(tag: str) -> DescentTrace:
            return DescentTrace(name, tuple(visited), tag, len(visited))

        def phase(tag: int, value: Element):
            side = summands[tag]

            def widened(u: Element):
                w = (tag, u)
                visited.append(w)
                outcome = step(w)
                if isinstance(outcome, Found):
                    return Found(_RealEvidence(outcome.witness))
                target = outcome.target
                if not less(target, w):
                    raise NonDecreasingStep(w, target, partial("NonDecreasingStep"))
                if target[0] == tag:
                    return Descend(target[1])
                return Found(_JumpWitness(target))

            result, _ = side.search(value, widened)
            return result

        tag0, v0 = start
        result = phase(tag0, v0)
        if isinstance(result, _JumpWitness):
            # The jump target is on the left; a second jump is impossible.
            result = phase(result.value[0], result.value[1])
        if not isinstance(result, _RealEvidence):
            raise SearchDefect("left-hand phase ended without evidence", partial("SearchDefect"))
        found = result.value
        return found, DescentTrace(name, tuple(visited), Found(found), len(visited))

    return DescentStructure(
        carrier_name=name,
        eq=eq,
        apart=apart,
        less=less,
        search=derived_search,
        show=show,
        strong=X.strong and Y.strong,
        dichotomous=X.dichotomous and Y.dichotomous,
        samples=tuple(
            [(0, x) for x in X.samples] + [(1, y) for y in Y.samples]
        ),
    )


def lex_product(X: DescentStructure, Y: DescentStructure) -> DescentStructure:
    """Pairs under the lexicographic order, first coordinate dominant.

    The search is the nested scheme: an inner second-factor search runs at
    a pinned first coordinate; a caller step that drops the first
    coordinate ends the inner run with a jump witness, which the outer
    first-factor search follows.  Equal-first-coordinate steps may rename
    the first coordinate within its equality class; the inner run keeps
    its pinned representative (step oracles are assumed extensional).
    The pair inequality is the same first-apart-or-second-below relation
    as for :func:`product`.
    """
    if X.search is None or Y.search is None:
        raise ValueError("lexicographic product needs both factors searchable")

    def eq(p, q):
        return X.eq(p[0], q[0]) and Y.eq(p[1], q[1])

    def apart(p, q):
        return X.apart(p[0], q[0]) or Y.less(p[1], q[1])

    def less(p, q):
        return X.less(p[0], q[0]) or (X.eq(p[0], q[0]) and Y.less(p[1], q[1]))

    name = f"({X.carrier_name} lex {Y.carrier_name})"

    def derived_search(start: Element, step: StepOracle):
        visited: list = []

        def partial(tag: str) -> DescentTrace:
            return DescentTrace(name, tuple(visited), tag, len(visited))

        state = {"y": start[1]}

        def outer(x0: Element):
            def inner(y: Element):
                p = (x0, y)
                visited.append(p)
                outcome = step(p)
                if isinstance(outcome, Found):
                    return Found(_RealEvidence(outcome.witness))
                target = outcome.target
                if not less(target, p):
                    raise NonDecreasingStep(p, target, partial("NonDecreasingStep"))
                if X.less(target[0], x0):
                    return Found(_JumpWitness(target))
                return Descend(target[1])

            result, _ = Y.search(state["y"], inner)
            if isinstance(result, _RealEvidence):
                return Found(result)
            state["y"] = result.value[1]
            return Descend(result.value[0])

        tagged, _ = X.search(start[0], outer)
        found = tagged.value
        return found, DescentTrace(name, tuple(visited), Found(found), len(visited))

    return DescentStructure(
        carrier_name=name,
        eq=eq,
        apart=apart,
        less=less,
        search=derived_search,
        show=lambda p: f"({X.show(p[0])},{Y.show(p[1])})",
        strong=X.strong and Y.strong,
        dichotomous=False,
        samples=tuple(itertools.product(X.samples, Y.samples)),
    )


@dataclass(frozen=True)
class IndexedFamily:
    """Structures indexed by a structure, with transports between equal indices.

    ``component(i)`` is the structure at index ``i``; ``transport(i, j)``
    is defined whenever ``i`` equals ``j`` in the index structure and
    carries elements of ``component(i)`` to ``component(j)``.  Transports
    must be the identity on the diagonal, compose along triangles of equal
    indices, and both preserve the strict relation and reflect apartness
    (they witness that equal indices carry the same structure).  Sample
    points come from the component structures themselves.
    """

    index: DescentStructure
    component: Callable[[Element], DescentStructure]
    transport: Callable[[Element, Element], Callable[[Element], Element]]


def two_point_family(X: DescentStructure, Y: DescentStructure) -> IndexedFamily:
    """The family over the booleans with components ``X`` at 0 and ``Y`` at 1."""
    comps = (X, Y)
    return IndexedFamily(
        index=booleans(),
        component=lambda i: comps[i],
        transport=lambda i, j: (lambda v: v),
    )


def check_family_coherence(family: IndexedFamily) -> None:
    """Sampled identity, triangle, and transport-contract checks.

    Raises :class:`CoherenceViolated` with the offending points.  Index
    triples range over the index samples; element samples come from each
    component structure.
    """
    idx = family.index
    pts = list(idx.samples)
    for i in pts:
        comp_i = family.component(i)
        tr_ii = family.transport(i, i)
        for x in comp_i.samples:
            if not comp_i.eq(tr_ii(x), x):
                raise CoherenceViolated(f"transport at ({i},{i}) moves {x!r}")
    for i, j in itertools.product(pts, pts):
        if not idx.eq(i, j):
            continue
        comp_i, comp_j = family.component(i), family.component(j)
        tr = family.transport(i, j)
        for x, y in itertools.product(comp_i.samples, comp_i.samples):
            if comp_i.less(x, y) and not comp_j.less(tr(x), tr(y)):
                raise CoherenceViolated(f"transport ({i},{j}) breaks the relation at ({x!r},{y!r})")
            if comp_j.apart(tr(x), tr(y)) and not comp_i.apart(x, y):
                raise CoherenceViolated(f"transport ({i},{j}) manufactures apartness at ({x!r},{y!r})")
        for k in pts:
            if not idx.eq(j, k):
                continue
            tr_jk = family.transport(j, k)
            tr_ik = family.transport(i, k)
            comp_k = family.component(k)
            for x in comp_i.samples:
                if not comp_k.eq(tr_jk(tr(x)), tr_ik(x)):
                    raise CoherenceViolated(
                        f"triangle ({i},{j},{k}) does not commute at {x!r}"
                    )


def sigma(family: IndexedFamily) -> DescentStructure:
    """Dependent pairs ``(i, x)`` over an indexed family, index-first order.

    Equality, apartness and the relation compare second components after
    transporting into the second pair's fiber.  The search nests exactly
    like the lexicographic product, except that a same-index descent
    transports its witness into the pinned fiber before continuing.
    Family coherence is checked on samples up front.  Strong/dichotomous
    are claimed when the index and every sampled component claim them.
    """
    check_family_coherence(family)
    idx = family.index
    if idx.search is None:
        raise ValueError("sigma needs a searchable index structure")

    def fiber(i: Element) -> DescentStructure:
        comp = family.component(i)
        if comp.search is None:
            raise ValueError(f"sigma needs searchable components (index {i!r})")
        return comp

    def eq(w, v):
        (i, x), (j, y) = w, v
        return idx.eq(i, j) and family.component(j).eq(family.transport(i, j)(x), y)

    def apart(w, v):
        (i, x), (j, y) = w, v
        if idx.apart(i, j):
            return True
        if not idx.eq(i, j):
            return False
        return family.component(j).apart(family.transport(i, j)(x), y)

    def less(w, v):
        (i, x), (j, y) = w, v
        if idx.less(i, j):
            return True
        if not idx.eq(i, j):
            return False
        return family.component(j).less(family.transport(i, j)(x), y)

    def show(w):
        i, x = w
        return f"({idx.show(i)}; {family.component(i).show(x)})"

    name = f"Sigma({idx.carrier_name})"

    def derived_search(start: Element, step: StepOracle):
        visited: list = []

        def partial(tag: str) -> DescentTrace:
            return DescentTrace(name, tuple(visited), tag, len(visited))

        state = {"x": start[1]}

        def outer(i0: Element):
            comp = fiber(i0)

            def inner(u: Element):
                w = (i0, u)
                visited.append(w)
                outcome = step(w)
                if isinstance(outcome, Found):
                    return Found(_RealEvidence(outcome.witness))
                target = outcome.target
                if not less(target, w):
                    raise NonDecreasingStep(w, target, partial("NonDecreasingStep"))
                j, v = target
                if idx.less(j, i0):
                    return Found(_JumpWitness(target))
                return Descend(family.transport(j, i0)(v))

            result, _ = comp.search(state["x"], inner)
            if isinstance(result, _RealEvidence):
                return Found(result)
            state["x"] = result.value[1]
            return Descend(result.value[0])

        tagged, _ = idx.search(start[0], outer)
        found = tagged.value
        return found, DescentTrace(name, tuple(visited), Found(found), len(visited))

    strong = idx.strong and all(family.component(i).strong for i in idx.samples)
    dichotomous = idx.dichotomous and all(
        family.component(i).dichotomous for i in idx.samples
    )
    return DescentStructure(
        carrier_name=name,
        eq=eq,
        apart=apart,
        less=less,
        search=derived_search,
        show=show,
        strong=strong,
        dichotomous=dichotomous,
        samples=tuple(
            (i, x) for i in idx.samples for x in family.component(i).samples
        ),
    )


def check_strong(S: DescentStructure, sample: Iterable[Element]) -> LawResult:
    """Sampled check that the strict relation implies apartness."""
    pts = list(sample)
    for a, b in itertools.product(pts, pts):
        if S.less(a, b) and not S.apart(a, b):
            return LawResult("fail", (a, b))
    return LawResult("pass")


def check_dichotomous(S: DescentStructure, sample: Iterable[Element]) -> LawResult:
    """Sampled check that apartness implies comparability."""
    pts = list(sample)
    for a, b in itertools.product(pts, pts):
        if S.apart(a, b) and not (S.less(a, b) or S.less(b, a)):
            return LawResult("fail", (a, b))
    return LawResult("pass")


@dataclass(frozen=True)
class EmptinessReport:
    """Result of driving a claimed no-minimal-elements oracle.

    ``vacuous`` means no inhabitant was found to start from.  Otherwise
    ``violation`` names how the oracle failed ("escaped" the subset or
    proposed a "non-descent"), at which element, after how many steps,
    certifying that no correct such oracle exists once the subset is
    inhabited.  ``violation`` of None means the budget ran out without a
    violation, which flags a defect on well-founded carriers.
    """

    vacuous: bool
    inhabitant: Optional[Element] = None
    violation: Optional[str] = None
    at: Optional[Element] = None
    steps: int = 0

    @property
    def certified(self) -> bool:
        return self.vacuous or self.violation is not None


def strongly_empty_check(
    S: DescentStructure,
    member: Callable[[Element], bool],
    no_min: Callable[[Element], Element],
    probe: Optional[Iterable[Element]] = None,
    fuel: Optional[int] = None,
) -> EmptinessReport:
    """Refute a claimed "every member has a smaller member" oracle.

    Iterates the oracle from the first probed inhabitant; on a
    well-founded carrier it must either leave the subset or fail to
    descend within the budget (rank + 1 on the naturals).  An empty
    subset passes vacuously: there is nothing to start from.
    """
    candidates = probe if probe is not None else S.samples
    start = next((x for x in candidates if member(x)), None)
    if start is None:
        return EmptinessReport(vacuous=True)
    budget = fuel if fuel is not None else (start + 1 if isinstance(start, int) else 1024)
    current = start
    for steps in range(1, budget + 1):
        proposed = no_min(current)
        if not member(proposed):
            return EmptinessReport(False, start, "escaped", current, steps)
        if not S.less(proposed, current):
            return EmptinessReport(False, start, "non-descent", current, steps)
        current = proposed
    return EmptinessReport(False, start, None, current, budget)


def structure_from_config(config: Any) -> DescentStructure:
    """Build a structure from its JSON description.

    Accepted shapes: ``"nat"``, ``{"product": [s, s]}``,
    ``{"coproduct": [s, s]}``, ``{"lex": [s, s]}``, and
    ``{"restrict": {"of": s, "pred": "<predicate>"}}``.  Dependent-pair
    structures are programmatic only (transports are code, not data).
    """
    from .dsl import eval_predicate, parse

    if config == "nat":
        return nat_structure()
    if not isinstance(config, dict) or len(config) != 1:
        raise ValueError(f"unrecognized structure description: {config!r}")
    kind, body = next(iter(config.items()))
    if kind in ("product", "coproduct", "lex"):
        if not isinstance(body, list) or len(body) != 2:
            raise ValueError(f"{kind} takes a two-element list")
        left, right = structure_from_config(body[0]), structure_from_config(body[1])
        maker = {"product": product, "coproduct": coproduct, "lex": lex_product}[kind]
        return maker(left, right)
    if kind == "restrict":
        base = structure_from_config(body["of"])
        expr = parse(body["pred"])
        return restrict(
            base,
            lambda x: eval_predicate(expr, x),
            name=f"{{x in {base.carrier_name} | {body['pred']}}}",
        )
    raise ValueError(f"unrecognized structure kind: {kind!r}")
