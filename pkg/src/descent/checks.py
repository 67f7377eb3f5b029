"""Seeded property checks and the instance generators behind them.

The CLI's ``check properties`` command runs this battery; the test suite
reuses the generators at larger sample counts.  Generators produce
*instances* (step oracles, complemented subsets, families); the expected
answers are always recomputed by independent brute force at the point of
comparison.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import arithmetic, dsl
from .combinators import (
    IndexedFamily,
    check_dichotomous,
    check_family_coherence,
    check_strong,
    coproduct,
    lex_product,
    product,
    restrict,
    sigma,
    two_point_family,
    CoherenceViolated,
)
from .complemented import (
    ComplementedSubset,
    ExtensionalSubset,
    clnp_least,
    locate,
    locator_from_least,
)
from .engine import Descend, DescentStructure, Found, search, verify_trace
from .naturals import check_axiom_suite, find_non_descent, nat_structure


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


# Instance generators.


def random_step_oracle(rng: random.Random, structure: DescentStructure):
    """A pure random oracle: Found here, or Descend to a smaller sampled element.

    Memoized per element so repeated queries agree (oracles must be pure).
    """
    pool = list(structure.samples)
    memo: Dict[object, object] = {}

    def step(x):
        if x not in memo:
            smaller = [y for y in pool if structure.less(y, x)]
            if not smaller or rng.random() < 0.35:
                memo[x] = Found(x)
            else:
                memo[x] = Descend(rng.choice(smaller))
        return memo[x]

    return step


def random_nat_oracle(rng: random.Random, worst_case: bool = False):
    """Random oracle on the naturals; ``worst_case`` forces the full countdown."""
    memo: Dict[int, object] = {}

    def step(x: int):
        if x not in memo:
            if x == 0 or (not worst_case and rng.random() < 0.3):
                memo[x] = Found(x)
            else:
                memo[x] = Descend(x - 1 if worst_case else rng.randrange(x))
        return memo[x]

    return step


def random_total_subset(
    rng: random.Random, bound: int, max_size: Optional[int] = None
) -> Tuple[ComplementedSubset, frozenset]:
    """A total complemented pair over [0, bound] with inhabited provers.

    Returns the pair and the prover set (for brute-force comparison).
    Everything above the bound refutes, keeping the pair total on all
    probes.
    """
    size = rng.randint(1, max_size if max_size is not None else max(1, bound // 10))
    provers = frozenset(rng.sample(range(bound + 1), size))
    return (
        ComplementedSubset(
            ExtensionalSubset(lambda x: x in provers, bound, "random provers"),
            ExtensionalSubset(lambda x: x > bound or (0 <= x and x not in provers),
                              None, "everything else"),
            check_bound=bound,
        ),
        provers,
    )


def random_finite_nat_structure(
    rng: random.Random, universe: int = 12, max_size: int = 4
) -> DescentStructure:
    """A restriction of the naturals to a small random inhabited subset."""
    size = rng.randint(1, max_size)
    members = frozenset(rng.sample(range(universe), size))
    return restrict(
        nat_structure(), lambda x: x in members,
        name=f"nat|{sorted(members)}", samples=tuple(sorted(members)),
    )


def shifted_component(offset: int, width: int = 6) -> DescentStructure:
    """The naturals from ``offset`` up, sampled on a small window."""
    return restrict(
        nat_structure(), lambda x: x >= offset,
        name=f"nat+{offset}", samples=tuple(range(offset, offset + width)),
    )


def _parity_index(indices: Tuple[int, ...]) -> DescentStructure:
    """Small indices equal up to parity; searchable through the booleans.

    The quotient order is the booleans' order, so searching the index is
    a pullback of the boolean search along parity.
    """
    from .combinators import RelPreservingMap, booleans, pullback

    index = DescentStructure(
        carrier_name="nat-mod-2",
        eq=lambda i, j: i % 2 == j % 2,
        apart=lambda i, j: i % 2 != j % 2,
        less=lambda i, j: i % 2 < j % 2,
        search=None,
        strong=True,
        dichotomous=True,
        samples=indices,
    )
    return pullback(index, RelPreservingMap(lambda i: i % 2, "parity"), booleans())


def parity_indexed_family(rng: random.Random, size: int = 4) -> IndexedFamily:
    """A family over indices equal-up-to-parity with shift transports.

    Index ``i`` carries the naturals from ``i`` up; the transport between
    equal (same-parity) indices shifts by the difference, which is
    coherent: shifts compose additively.
    """
    indices = tuple(range(rng.randint(3, max(3, size))))
    return IndexedFamily(
        index=_parity_index(indices),
        component=shifted_component,
        transport=lambda i, j: (lambda v: v - i + j),
    )


def incoherent_family() -> IndexedFamily:
    """Identity on the diagonal but a stray +1 between distinct equal indices."""
    return IndexedFamily(
        index=_parity_index((0, 1, 2, 3)),
        component=lambda i: shifted_component(0),
        transport=lambda i, j: (lambda v: v if i == j else v + 1),
    )


def random_predicate_ast(rng: random.Random, depth: int = 3) -> dsl.PredicateExpr:
    def arith(d: int) -> dsl.ArithExpr:
        if d <= 0 or rng.random() < 0.4:
            return rng.choice([dsl.Var(), dsl.Lit(rng.randint(0, 9))])
        op = rng.choice(["+", "-", "*", "mod"])
        return dsl.Arith(op, arith(d - 1), arith(d - 1))

    def pred(d: int) -> dsl.PredicateExpr:
        if d <= 0:
            choices = ["cmp", "divides", "const", "builtin"]
        else:
            choices = ["cmp", "divides", "const", "builtin", "not", "and", "or"]
        kind = rng.choice(choices)
        if kind == "cmp":
            return dsl.Cmp(rng.choice(["=", "!=", "<", "<=", ">", ">="]), arith(d), arith(d))
        if kind == "divides":
            return dsl.Divides(arith(d), arith(d))
        if kind == "const":
            return dsl.BoolConst(rng.random() < 0.5)
        if kind == "builtin":
            return dsl.BuiltinPred(rng.choice(["prime", "coprime"]), arith(d))
        if kind == "not":
            return dsl.Not(pred(d - 1))
        node = dsl.And if kind == "and" else dsl.Or
        return node(pred(d - 1), pred(d - 1))

    return pred(depth)


# Independent brute-force answers used by the battery.


def sieve_smallest_prime_factor(limit: int) -> List[int]:
    spf = list(range(limit + 1))
    for p in range(2, int(limit**0.5) + 1):
        if spf[p] == p:
            for multiple in range(p * p, limit + 1, p):
                if spf[multiple] == multiple:
                    spf[multiple] = p
    return spf


def first_non_descent_scan(alpha: Callable[[int], int]) -> int:
    i = 0
    while alpha(i) > alpha(i + 1):
        i += 1
    return i


def random_sequence(rng: random.Random, kind: Optional[str] = None) -> Callable[[int], int]:
    kind = kind or rng.choice(["constant", "decreasing-then-flat", "increasing", "random"])
    if kind == "constant":
        c = rng.randint(0, 40)
        return lambda n: c
    if kind == "increasing":
        base = rng.randint(0, 10)
        return lambda n: base + n
    if kind == "decreasing-then-flat":
        top = rng.randint(1, 60)
        return lambda n: max(top - n, 0)
    values: Dict[int, int] = {}

    def alpha(n: int) -> int:
        if n not in values:
            values[n] = rng.randint(0, 50)
        return values[n]

    return alpha


# The battery.


def _descent_bound_check(rng: random.Random, runs: int) -> CheckResult:
    nat = nat_structure()
    for i in range(runs):
        start = rng.randint(0, 256)
        step = random_nat_oracle(rng, worst_case=(i % 10 == 0))
        found, trace = search(nat, start, step)
        if trace.steps > start + 1:
            return CheckResult("descent-bound", False, f"{trace.steps} steps from {start}")
        if not verify_trace(nat, trace):
            return CheckResult("descent-bound", False, f"trace audit failed from {start}")
        if not isinstance(step(found), Found):
            return CheckResult("descent-bound", False, f"replay at {found} is not evidence")
    return CheckResult("descent-bound", True, f"{runs} random oracles")


def _least_element_check(rng: random.Random, runs: int, bound: int = 128) -> CheckResult:
    for _ in range(runs):
        pair, provers = random_total_subset(rng, bound)
        inhabitant = rng.choice(sorted(provers))
        cert = clnp_least(pair, inhabitant)
        if cert.mu != min(provers):
            return CheckResult(
                "least-element-vs-brute-force", False, f"{cert.mu} != {min(provers)}"
            )
        for x1 in sorted(provers):
            if locate(pair, x1) != locator_from_least(pair, cert, x1):
                return CheckResult(
                    "least-element-vs-brute-force", False, f"locator mismatch at {x1}"
                )
    return CheckResult("least-element-vs-brute-force", True, f"{runs} random total pairs")


def _prime_divisor_check(limit: int) -> CheckResult:
    spf = sieve_smallest_prime_factor(limit)
    for n in range(2, limit + 1):
        descent = arithmetic.prime_divisor_descent(n)
        clnp = arithmetic.prime_divisor_clnp(n)
        for result in (descent, clnp):
            if not arithmetic.is_prime_oracle(result.p) or n % result.p != 0:
                return CheckResult("prime-divisor-methods", False, f"bad divisor for {n}")
        if descent.p != spf[n]:
            return CheckResult(
                "prime-divisor-methods", False, f"descent {descent.p} != sieve {spf[n]} at {n}"
            )
    return CheckResult("prime-divisor-methods", True, f"n up to {limit}, both methods")


def _non_descent_check(rng: random.Random, runs: int) -> CheckResult:
    for _ in range(runs):
        alpha = random_sequence(rng)
        i = find_non_descent(alpha)
        expected = first_non_descent_scan(alpha)
        if i != expected or alpha(i) > alpha(i + 1):
            return CheckResult("non-descent-vs-scan", False, f"{i} != {expected}")
    return CheckResult("non-descent-vs-scan", True, f"{runs} sequences")


def _combinator_soundness_check(rng: random.Random, runs: int) -> CheckResult:
    for _ in range(runs):
        X = random_finite_nat_structure(rng)
        Y = random_finite_nat_structure(rng)
        built = {
            "product": product(X, Y),
            "coproduct": coproduct(X, Y),
            "lex": lex_product(X, Y),
            "sigma": sigma(two_point_family(X, Y)),
        }
        for label, S in built.items():
            if not S.samples:
                continue
            start = rng.choice(S.samples)
            step = random_step_oracle(rng, S)
            found, trace = search(S, start, step)
            if not isinstance(step(found), Found):
                return CheckResult("combinator-soundness", False, f"{label}: replay failed")
            if not verify_trace(S, trace):
                return CheckResult("combinator-soundness", False, f"{label}: trace audit failed")
    return CheckResult("combinator-soundness", True, f"{runs} instances per constructor")


def _flag_propagation_check() -> CheckResult:
    nat = nat_structure()
    sample_nat = tuple(range(9))
    prod = product(nat, nat)
    lex = lex_product(nat, nat)
    cop = coproduct(nat, nat)
    pair_sample = tuple((a, b) for a in range(9) for b in range(9))
    cop_sample = tuple((t, v) for t in (0, 1) for v in range(9))
    if check_strong(nat, sample_nat).status != "pass":
        return CheckResult("flag-propagation", False, "naturals not strong")
    if check_dichotomous(nat, sample_nat).status != "pass":
        return CheckResult("flag-propagation", False, "naturals not dichotomous")
    if not (prod.strong and check_strong(prod, pair_sample).status == "pass"):
        return CheckResult("flag-propagation", False, "product strongness")
    if check_dichotomous(prod, pair_sample).status != "fail":
        return CheckResult("flag-propagation", False, "product dichotomy unexpectedly holds")
    if not (lex.strong and check_strong(lex, pair_sample).status == "pass"):
        return CheckResult("flag-propagation", False, "lex strongness")
    if check_dichotomous(lex, pair_sample).status != "pass":
        return CheckResult("flag-propagation", False, "lex dichotomy on decidable factors")
    if not (cop.strong and cop.dichotomous):
        return CheckResult("flag-propagation", False, "coproduct flags")
    if check_strong(cop, cop_sample).status != "pass":
        return CheckResult("flag-propagation", False, "coproduct strongness")
    if check_dichotomous(cop, cop_sample).status != "pass":
        return CheckResult("flag-propagation", False, "coproduct dichotomy")
    return CheckResult("flag-propagation", True, "exhaustive on [0,8] samples")


def _dsl_round_trip_check(rng: random.Random, runs: int) -> CheckResult:
    for _ in range(runs):
        ast = random_predicate_ast(rng)
        printed = dsl.to_text(ast)
        if dsl.parse(printed) != ast:
            return CheckResult("dsl-round-trip", False, printed)
    return CheckResult("dsl-round-trip", True, f"{runs} generated predicates")


def _transport_coherence_check(rng: random.Random, runs: int) -> CheckResult:
    for _ in range(runs):
        family = parity_indexed_family(rng)
        try:
            check_family_coherence(family)
        except CoherenceViolated as exc:
            return CheckResult("transport-coherence", False, str(exc))
    try:
        sigma(incoherent_family())
    except CoherenceViolated:
        return CheckResult("transport-coherence", True, f"{runs} families; incoherent rejected")
    return CheckResult("transport-coherence", False, "incoherent family accepted")


def run_property_checks(seed: int, scale: int = 1) -> List[CheckResult]:
    """The full battery at a modest sample budget; deterministic for a seed."""
    rng = random.Random(seed)
    return [
        _descent_bound_check(rng, 200 * scale),
        _least_element_check(rng, 60 * scale),
        _prime_divisor_check(500 * scale),
        _non_descent_check(rng, 100 * scale),
        _combinator_soundness_check(rng, 25 * scale),
        _flag_propagation_check(),
        _dsl_round_trip_check(rng, 200 * scale),
        _transport_coherence_check(rng, 25 * scale),
    ]


def run_axiom_checks(bounds: Sequence[int] = (2, 8, 64), structure=None) -> List[CheckResult]:
    """Exhaustive law suite at each bound, as check results."""
    results = []
    for bound in bounds:
        report = check_axiom_suite(bound, structure)
        failing = ", ".join(report.failing())
        results.append(
            CheckResult(
                f"axiom-suite-bound-{bound}",
                report.passed,
                failing or f"all laws pass up to {bound}",
            )
        )
    return results
