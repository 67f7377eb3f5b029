"""The canonical structure on the naturals and its executable law suite.

Apartness on the naturals is negated decidable equality, and the strict
order is primitive; ``>=`` is derived as ``eq or greater``, keeping one
strict comparison primitive.  The laws this module checks exhaustively on
a finite range:

* equality is an equivalence relation;
* apartness excludes equality, is symmetric, cotransitive, and decidable
  (``eq or apart`` always holds), and respects equality on both sides;
* the order is total in the positive sense (``lt or ge``), ``ge`` agrees
  with its derivation, ``lt`` implies apartness, apartness implies
  comparability, ``not lt`` implies ``ge``, and ``lt`` is irreflexive;
* the successor is an embedding (injective up to equality).

Functions on the naturals are strongly extensional, and (weakly) monotone
functions reflect the strict order; :func:`check_function_laws` checks
both, plus the converse for strongly monotone embeddings.  Deliberately
broken oracles (:func:`mutated_structure`) prove the checks have teeth.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Callable, Optional, Tuple

from .engine import Descend, DescentStructure, Found, nat_search

NatFn = Callable[[int], int]


@dataclass(frozen=True)
class LawResult:
    """Outcome of one law check; a failure always carries a counterexample."""

    status: str  # "pass" | "fail" | "premise-unmet"
    counterexample: Optional[Tuple[int, ...]] = None


@dataclass(frozen=True)
class AxiomReport:
    """Per-law results of a suite run, in a stable order."""

    results: Tuple[Tuple[str, LawResult], ...]

    @property
    def passed(self) -> bool:
        return all(r.status != "fail" for _, r in self.results)

    def failing(self) -> Tuple[str, ...]:
        return tuple(name for name, r in self.results if r.status == "fail")

    def result(self, law: str) -> LawResult:
        return dict(self.results)[law]

    def to_json(self) -> str:
        return json.dumps(
            [
                {
                    "law": name,
                    "status": r.status,
                    "counterexample": list(r.counterexample) if r.counterexample else None,
                }
                for name, r in self.results
            ]
        )


def nat_structure() -> DescentStructure:
    """The naturals with integer equality, negated-equality apartness and ``<``.

    Strong and dichotomous; its search capability is :func:`nat_search`.
    """
    return DescentStructure(
        carrier_name="nat",
        eq=lambda a, b: a == b,
        apart=lambda a, b: a != b,
        less=lambda a, b: isinstance(a, int) and isinstance(b, int) and 0 <= a < b,
        search=nat_search,
        show=str,
        strong=True,
        dichotomous=True,
        samples=tuple(range(16)),
    )


def mutated_structure(kind: str) -> DescentStructure:
    """Deliberately broken variants of the canonical structure.

    ``apart-as-eq`` breaks apartness-excludes-equality, ``apart-as-lt``
    breaks apartness symmetry, ``less-reflexive`` breaks irreflexivity and
    lt-implies-apart.  Used to demonstrate that the law suite rejects
    broken oracles.
    """
    base = nat_structure()
    if kind == "apart-as-eq":
        return replace(base, apart=lambda a, b: a == b)
    if kind == "apart-as-lt":
        return replace(base, apart=lambda a, b: a < b)
    if kind == "less-reflexive":
        return replace(base, less=lambda a, b: 0 <= a <= b)
    raise ValueError(f"unknown mutation {kind!r}")


MUTATION_KINDS = ("apart-as-eq", "apart-as-lt", "less-reflexive")


def check_axiom_suite(bound: int, structure: Optional[DescentStructure] = None) -> AxiomReport:
    """Exhaustively check the law suite over all values up to ``bound``.

    ``bound`` must be at least 2.  Laws quantifying over a third value
    enumerate it over the full range for every pair satisfying the
    premise.  Apartness extensionality is checked in its one-sided
    three-variable instance (``eq(x, z) and apart(x, y)`` implies
    ``apart(z, y)``), which together with symmetry covers the two-sided
    law without a fourth nested loop.
    """
    if bound < 2:
        raise ValueError("bound must be at least 2")
    s = structure if structure is not None else nat_structure()
    eq, apart, less = s.eq, s.apart, s.less
    rng = range(bound + 1)

    def ge(a: int, b: int) -> bool:
        # Derived comparison: a >= b iff a = b or b < a.
        return eq(a, b) or less(b, a)

    results: list[Tuple[str, LawResult]] = []

    def law(name: str, violation) -> None:
        results.append(
            (name, LawResult("fail", violation) if violation else LawResult("pass"))
        )

    def first(gen) -> Optional[Tuple[int, ...]]:
        for ce in gen:
            return ce
        return None

    law("eq-reflexive", first((x,) for x in rng if not eq(x, x)))
    law("eq-symmetric", first((x, y) for x in rng for y in rng if eq(x, y) and not eq(y, x)))
    law(
        "eq-transitive",
        first(
            (x, y, z)
            for x in rng
            for y in rng
            if eq(x, y)
            for z in rng
            if eq(y, z) and not eq(x, z)
        ),
    )
    law(
        "apart-excludes-eq",
        first((x, y) for x in rng for y in rng if apart(x, y) and eq(x, y)),
    )
    law(
        "apart-symmetric",
        first((x, y) for x in rng for y in rng if apart(x, y) and not apart(y, x)),
    )
    law(
        "apart-cotransitive",
        first(
            (x, y, z)
            for x in rng
            for y in rng
            if apart(x, y)
            for z in rng
            if not (apart(z, x) or apart(z, y))
        ),
    )
    law(
        "eq-or-apart-decidable",
        first((x, y) for x in rng for y in rng if not (eq(x, y) or apart(x, y))),
    )
    law(
        "apart-extensional",
        first(
            (x, y, z)
            for x in rng
            for y in rng
            if apart(x, y)
            for z in rng
            if eq(x, z) and not apart(z, y)
        ),
    )
    law(
        "lt-or-ge-total",
        first((x, y) for x in rng for y in rng if not (less(x, y) or ge(x, y))),
    )
    law(
        "ge-iff-eq-or-gt",
        first(
            (x, y)
            for x in rng
            for y in rng
            if ge(x, y) != (eq(x, y) or less(y, x))
        ),
    )
    law(
        "lt-implies-apart",
        first((x, y) for x in rng for y in rng if less(x, y) and not apart(x, y)),
    )
    law(
        "apart-implies-comparable",
        first(
            (x, y)
            for x in rng
            for y in rng
            if apart(x, y) and not (less(x, y) or less(y, x))
        ),
    )
    law(
        "not-lt-implies-ge",
        first((x, y) for x in rng for y in rng if not less(x, y) and not ge(x, y)),
    )
    law("lt-irreflexive", first((x,) for x in rng if less(x, x)))
    law(
        "successor-injective",
        first((x, y) for x in rng for y in rng if eq(x + 1, y + 1) and not eq(x, y)),
    )
    return AxiomReport(tuple(results))


def check_function_laws(f: NatFn, bound: int) -> AxiomReport:
    """Check the comparison-transport laws of a total function on [0, bound].

    * ``strongly-extensional``: apartness of values reflects to arguments
      (a theorem on the naturals; failure flags a defect).
    * ``monotone-implies-strongly-monotone``: when ``f`` is weakly
      monotone on the range, strict order on values reflects to arguments.
      Marked ``premise-unmet`` when ``f`` is not weakly monotone.
    * ``strongly-monotone-embedding-implies-monotone``: when ``f``
      reflects strict order and is injective up to equality on the range
      (the embedding reading of "injective"), it preserves strict order.
    """
    s = nat_structure()
    eq, apart, less = s.eq, s.apart, s.less
    rng = range(bound + 1)
    results: list[Tuple[str, LawResult]] = []

    ce = next(
        (
            (x, y)
            for x in rng
            for y in rng
            if apart(f(x), f(y)) and not apart(x, y)
        ),
        None,
    )
    results.append(("strongly-extensional", LawResult("fail", ce) if ce else LawResult("pass")))

    weakly_monotone = all(f(x) <= f(x + 1) for x in range(bound))
    if not weakly_monotone:
        results.append(("monotone-implies-strongly-monotone", LawResult("premise-unmet")))
    else:
        ce = next(
            ((x, y) for x in rng for y in rng if less(f(x), f(y)) and not less(x, y)),
            None,
        )
        results.append(
            (
                "monotone-implies-strongly-monotone",
                LawResult("fail", ce) if ce else LawResult("pass"),
            )
        )

    strongly_monotone = all(
        less(x, y) for x in rng for y in rng if less(f(x), f(y))
    )
    embedding = all(eq(x, y) for x in rng for y in rng if eq(f(x), f(y)))
    if not (strongly_monotone and embedding):
        results.append(
            ("strongly-monotone-embedding-implies-monotone", LawResult("premise-unmet"))
        )
    else:
        ce = next(
            ((x, y) for x in rng for y in rng if less(x, y) and not less(f(x), f(y))),
            None,
        )
        results.append(
            (
                "strongly-monotone-embedding-implies-monotone",
                LawResult("fail", ce) if ce else LawResult("pass"),
            )
        )
    return AxiomReport(tuple(results))


def find_non_descent(alpha: NatFn) -> int:
    """First index reached by descent where a sequence fails to drop.

    Runs the descent from ``alpha(0)`` with the advance-by-one tie-break:
    at index ``n`` either ``alpha(n) <= alpha(n + 1)`` holds (done) or the
    search continues from ``alpha(n + 1)``, which is strictly smaller.
    Total within ``alpha(0) + 1`` oracle probes; the result ``i``
    satisfies ``alpha(i) <= alpha(i + 1)`` and, under this tie-break,
    equals the first such index.
    """
    state = {"n": 0}

    def step(value: int):
        n = state["n"]
        if alpha(n) <= alpha(n + 1):
            return Found(value)
        state["n"] = n + 1
        return Descend(alpha(n + 1))

    nat_search(alpha(0), step)
    return state["n"]
