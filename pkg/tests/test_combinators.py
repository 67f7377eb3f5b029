"""The structure algebra: derived searches, flags, families, emptiness."""

import itertools
import random

import pytest

from descent.checks import (
    incoherent_family,
    parity_indexed_family,
    random_finite_nat_structure,
    random_step_oracle,
)
from descent.combinators import (
    CoherenceViolated,
    ContractViolated,
    EscapedSubset,
    IndexedFamily,
    RelPreservingMap,
    booleans,
    check_dichotomous,
    check_family_coherence,
    check_map_contracts,
    check_strong,
    coproduct,
    lex_product,
    product,
    pullback,
    restrict,
    sigma,
    strongly_empty_check,
    structure_from_config,
    two_point_family,
)
from descent.engine import Descend, DescentStructure, Found, NonDecreasingStep, search, verify_trace
from descent.naturals import nat_structure

NAT = nat_structure()


def countdown_by(k):
    return lambda x: Found(x) if x == 0 else Descend(x - k)


class TestPullback:
    def test_even_numbers_by_inclusion(self):
        evens = restrict(NAT, lambda x: x % 2 == 0, name="even")
        found, trace = search(evens, 10, countdown_by(2))
        assert found == 0
        assert trace.visited == (10, 8, 6, 4, 2, 0)
        assert verify_trace(evens, trace)

    def test_affine_pullback_agrees_with_direct_search(self):
        affine = pullback(NAT, RelPreservingMap(lambda x: 2 * x + 1), NAT)
        rng = random.Random(5)
        for _ in range(100):
            start = rng.randrange(0, 60)
            memo = {}

            def step(x):
                if x not in memo:
                    if x == 0 or rng.random() < 0.3:
                        memo[x] = Found(x)
                    else:
                        memo[x] = Descend(rng.randrange(x))
                return memo[x]

            found_a, trace_a = search(affine, start, step)
            found_n, trace_n = search(NAT, start, step)
            assert (found_a, trace_a.visited) == (found_n, trace_n.visited)

    def test_constant_map_violates_contract(self):
        with pytest.raises(ContractViolated):
            pullback(NAT, RelPreservingMap(lambda x: 7), NAT, samples=range(4))

    def test_runtime_contract_check(self):
        # The sampled check can miss a breach; the run-time mirror cannot.
        shrinking = DescentStructure(
            "shrunk", NAT.eq, NAT.apart, lambda a, b: 0 <= a < b, show=str
        )
        bad = pullback(shrinking, RelPreservingMap(lambda x: x // 2), NAT)
        with pytest.raises(ContractViolated):
            search(bad, 3, lambda x: Found(x) if x == 0 else Descend(x - 1))


class TestRestrict:
    def test_multiples_of_three(self):
        triples = restrict(NAT, lambda x: x % 3 == 0, name="mult3")
        found, trace = search(triples, 9, countdown_by(3))
        assert found == 0 and trace.steps == 4

    def test_escape_detected(self):
        above_five = restrict(NAT, lambda x: x > 5)
        with pytest.raises(EscapedSubset) as exc:
            search(above_five, 9, lambda x: Descend(4))
        assert exc.value.element == 4

    def test_prime_restriction_agrees_with_ambient_search(self):
        def is_prime(x):
            return x > 1 and all(x % d for d in range(2, x))

        primes = restrict(NAT, is_prime, name="prime")

        def step(x):
            smaller = [p for p in range(2, x) if is_prime(p)]
            return Descend(max(smaller)) if smaller else Found(x)

        found_r, trace_r = search(primes, 23, step)
        found_n, trace_n = search(NAT, 23, step)
        assert (found_r, trace_r.visited) == (found_n, trace_n.visited)

    def test_flags_inherited(self):
        primes = restrict(NAT, lambda x: x in (2, 3, 5))
        assert primes.strong and primes.dichotomous


class TestProduct:
    def test_diagonal_countdown(self):
        prod = product(NAT, NAT)

        def step(p):
            return Found(p) if p[0] == 0 else Descend((p[0] - 1, p[1] - 1))

        found, trace = search(prod, (3, 3), step)
        assert found == (0, 0)
        assert trace.visited == ((3, 3), (2, 2), (1, 1), (0, 0))
        assert verify_trace(prod, trace)

    def test_strong_flag_from_either_factor(self):
        from dataclasses import replace

        unclaimed = replace(booleans(), strong=False, dichotomous=False)
        assert product(NAT, unclaimed).strong
        assert product(unclaimed, NAT).strong
        assert product(NAT, NAT).strong
        assert not product(unclaimed, unclaimed).strong

    def test_second_factor_needs_no_search(self):
        plain = DescentStructure(
            "plain", lambda a, b: a == b, lambda a, b: a != b,
            lambda a, b: 0 <= a < b, samples=(0, 1, 2),
        )
        prod = product(NAT, plain)
        found, _ = search(prod, (2, 2), lambda p: Found(p) if p[0] == 0 else Descend((p[0] - 1, p[1] - 1)))
        assert found == (0, 0)

    def test_componentwise_order(self):
        prod = product(NAT, NAT)
        assert not prod.less((1, 5), (2, 3))
        assert prod.less((1, 2), (2, 3))

    def test_componentwise_drop_witnesses_apartness(self):
        # With the first-apart-or-second-below inequality, less implies
        # apart outright, so strongness needs no factor assumption here.
        prod = product(NAT, NAT)
        assert prod.apart((1, 2), (2, 3))


class TestCoproduct:
    def test_right_summand_countdown(self):
        cop = coproduct(NAT, NAT)

        def step(w):
            return Found(w) if w[1] == 0 else Descend((w[0], w[1] - 1))

        found, trace = search(cop, (1, 4), step)
        assert found == (1, 0)
        assert all(tag == 1 for tag, _ in trace.visited)

    def test_cross_summand_jump(self):
        cop = coproduct(NAT, NAT)

        def step(w):
            tag, v = w
            if tag == 1 and v == 4:
                return Descend((0, 7))
            return Found(w) if v == 0 else Descend((tag, v - 1))

        found, trace = search(cop, (1, 4), step)
        assert found == (0, 0)
        assert trace.visited == ((1, 4),) + tuple((0, v) for v in range(7, -1, -1))
        crossings = sum(1 for a, b in zip(trace.visited, trace.visited[1:]) if a[0] != b[0])
        assert crossings == 1
        assert verify_trace(cop, trace)

    def test_left_cannot_jump_right(self):
        cop = coproduct(NAT, NAT)
        with pytest.raises(NonDecreasingStep):
            search(cop, (0, 3), lambda w: Descend((1, 0)))

    def test_boolean_coproduct_is_dichotomous(self):
        two = booleans()
        cop = coproduct(two, two)
        assert cop.dichotomous
        assert check_dichotomous(cop, cop.samples).status == "pass"

    def test_show(self):
        cop = coproduct(NAT, NAT)
        assert cop.show((0, 3)) == "inl 3"
        assert cop.show((1, 0)) == "inr 0"


class TestLexProduct:
    def test_forced_path(self):
        lex = lex_product(NAT, NAT)

        def step(p):
            x, y = p
            if p == (0, 0):
                return Found(p)
            return Descend((x, y - 1) if y > 0 else (x - 1, 2))

        found, trace = search(lex, (2, 3), step)
        assert found == (0, 0)
        assert trace.visited == (
            (2, 3), (2, 2), (2, 1), (2, 0),
            (1, 2), (1, 1), (1, 0),
            (0, 2), (0, 1), (0, 0),
        )
        assert verify_trace(lex, trace)

    def test_first_coordinate_dominates(self):
        lex = lex_product(NAT, NAT)
        assert lex.less((1, 999), (2, 0))
        assert not lex.less((2, 0), (1, 999))

    def test_projections_do_not_preserve_the_order(self):
        lex = lex_product(NAT, NAT)
        assert lex.less((0, 0), (0, 1))
        assert not NAT.less(0, 0)
        with pytest.raises(ContractViolated):
            check_map_contracts(
                RelPreservingMap(lambda p: p[0], "first projection"),
                lex, NAT, samples=[(0, 0), (0, 1)],
            )


class TestSigma:
    def test_two_point_family_agrees_with_coproduct(self):
        sig = sigma(two_point_family(NAT, NAT))
        cop = coproduct(NAT, NAT)
        probes = [(t, v) for t in (0, 1) for v in range(6)]
        for w, v in itertools.product(probes, probes):
            assert sig.eq(w, v) == cop.eq(w, v)
            assert sig.apart(w, v) == cop.apart(w, v)
            assert sig.less(w, v) == cop.less(w, v)

        def step(w):
            tag, v = w
            if tag == 1 and v == 2:
                return Descend((0, 3))
            return Found(w) if v == 0 else Descend((tag, v - 1))

        assert search(sig, (1, 2), step)[0] == search(cop, (1, 2), step)[0]
        assert search(sig, (1, 2), step)[1].visited == search(cop, (1, 2), step)[1].visited

    def test_forced_index_countdown(self):
        family = IndexedFamily(
            index=restrict(NAT, lambda i: i <= 3, name="nat<=3", samples=(0, 1, 2, 3)),
            component=lambda i: NAT,
            transport=lambda i, j: (lambda v: v),
        )
        sig = sigma(family)

        def step(w):
            i, _x = w
            return Found(w) if i == 0 else Descend((i - 1, 9))

        found, trace = search(sig, (2, 5), step)
        assert found == (0, 9)
        assert trace.visited == ((2, 5), (1, 9), (0, 9))

    def test_parity_family_transports_witnesses(self):
        family = parity_indexed_family(random.Random(3))
        sig = sigma(family)

        def step(w):
            i, v = w
            if i % 2 == 0 and v <= i:
                return Found(w)
            if i % 2 == 1:
                return Descend((0, 0))
            return Descend((i, v - 1))

        found, trace = search(sig, (3, 7), step)
        assert step(found) == Found(found)
        assert verify_trace(sig, trace)

    def test_same_class_descent_transports_the_witness(self):
        # Proposals at a different-but-equal index (same parity) must be
        # carried into the pinned fiber: (0, k) and (2, k + 2) are the
        # same point, so descending to (0, k) continues at (2, k + 2).
        family = parity_indexed_family(random.Random(5))
        sig = sigma(family)

        def step(w):
            i, v = w
            if i % 2 == 1:
                return Descend((0, 0))
            if v <= i:
                return Found(w)
            return Descend((0, v - 3) if i >= 2 else (i, v - 1))

        found, trace = search(sig, (2, 6), step)
        assert found == (2, 2)
        assert trace.visited == ((2, 6), (2, 5), (2, 4), (2, 3), (2, 2))
        assert verify_trace(sig, trace)
        assert sig.eq((0, 3), (2, 5))  # the first proposal names the second visit

    def test_incoherent_family_rejected(self):
        with pytest.raises(CoherenceViolated):
            sigma(incoherent_family())

    def test_coherence_check_passes_for_shift_family(self):
        check_family_coherence(parity_indexed_family(random.Random(1)))

    def test_first_projection_strongly_extensional_but_not_preserving(self):
        family = parity_indexed_family(random.Random(2))
        sig = sigma(family)
        idx = family.index
        pairs = list(itertools.product(sig.samples, sig.samples))
        assert all(
            sig.apart(w, v) for w, v in pairs if idx.apart(w[0], v[0])
        )  # apartness of indices reflects to pairs, so the projection is strongly extensional
        counterexamples = [
            (w, v) for w, v in pairs if sig.less(w, v) and not idx.less(w[0], v[0])
        ]
        assert counterexamples  # same-index drops break relation preservation

    def test_sigma_show(self):
        sig = sigma(two_point_family(NAT, NAT))
        assert sig.show((1, 4)) == "(1; 4)"

    def test_extensionality_of_comparisons(self):
        family = parity_indexed_family(random.Random(4))
        sig = sigma(family)
        pairs = list(itertools.product(sig.samples, repeat=2))
        equal_pairs = [(w, v) for w, v in pairs if sig.eq(w, v) and w != v]
        assert equal_pairs  # distinct representatives of equal points exist
        for w, v in equal_pairs[:40]:
            for probe in sig.samples[:10]:
                assert sig.less(w, probe) == sig.less(v, probe)
                assert sig.less(probe, w) == sig.less(probe, v)
                assert sig.apart(w, probe) == sig.apart(v, probe)


class TestFlagChecks:
    def test_naturals_pass_both(self):
        sample = range(65)
        assert check_strong(NAT, sample).status == "pass"
        assert check_dichotomous(NAT, sample).status == "pass"

    def test_componentwise_product_dichotomy_fails(self):
        prod = product(NAT, NAT)
        result = check_dichotomous(prod, itertools.product(range(9), repeat=2))
        assert result.status == "fail"
        a, b = result.counterexample
        assert prod.apart(a, b)
        assert not prod.less(a, b) and not prod.less(b, a)

    def test_lex_of_dichotomous_factors_passes(self):
        lex = lex_product(NAT, NAT)
        assert check_dichotomous(lex, itertools.product(range(9), repeat=2)).status == "pass"

    def test_lex_converse_contrapositive(self):
        # A non-dichotomous first factor forces the composite check to fail.
        fuzzy = DescentStructure(
            "fuzzy", lambda a, b: a == b, lambda a, b: a != b,
            lambda a, b: False, search=NAT.search, samples=(0, 1),
        )
        lex = lex_product(fuzzy, NAT)
        sample = [(i, j) for i in (0, 1) for j in (0, 1)]
        assert check_dichotomous(fuzzy, (0, 1)).status == "fail"
        assert check_dichotomous(lex, sample).status == "fail"

    def test_lex_strong_when_both_factors_strong(self):
        lex = lex_product(NAT, NAT)
        assert lex.strong
        assert check_strong(lex, itertools.product(range(9), repeat=2)).status == "pass"


class TestStronglyEmpty:
    def test_interval_violates_at_zero(self):
        report = strongly_empty_check(
            NAT, lambda a: 0 <= a <= 10, lambda a: a - 1, probe=[10]
        )
        assert report.violation == "escaped"
        assert report.at == 0
        assert report.steps <= 11

    def test_positive_evens_violate_at_two(self):
        report = strongly_empty_check(
            NAT, lambda a: a > 0 and a % 2 == 0, lambda a: a - 2, probe=[8]
        )
        assert report.violation == "escaped"
        assert report.at == 2

    def test_empty_subset_is_vacuous(self):
        report = strongly_empty_check(NAT, lambda a: False, lambda a: a, probe=range(32))
        assert report.vacuous and report.certified

    def test_non_descent_violation(self):
        report = strongly_empty_check(NAT, lambda a: True, lambda a: a, probe=[5])
        assert report.violation == "non-descent"


class TestRandomInstances:
    @pytest.mark.parametrize("builder", ["product", "coproduct", "lex", "sigma"])
    def test_search_soundness(self, builder):
        rng = random.Random(hash(builder) & 0xFFFF)
        for _ in range(40):
            X = random_finite_nat_structure(rng)
            Y = random_finite_nat_structure(rng)
            S = {
                "product": lambda: product(X, Y),
                "coproduct": lambda: coproduct(X, Y),
                "lex": lambda: lex_product(X, Y),
                "sigma": lambda: sigma(two_point_family(X, Y)),
            }[builder]()
            if not S.samples:
                continue
            start = rng.choice(S.samples)
            step = random_step_oracle(rng, S)
            found, trace = search(S, start, step)
            assert step(found) == Found(found)
            assert verify_trace(S, trace)
            # Claimed flags must survive the sampled checks.
            if S.strong:
                assert check_strong(S, S.samples).status == "pass"
            if S.dichotomous:
                assert check_dichotomous(S, S.samples).status == "pass"


class TestStructureConfig:
    def test_nat(self):
        assert structure_from_config("nat").carrier_name == "nat"

    def test_nested(self):
        lex = structure_from_config({"lex": ["nat", "nat"]})
        assert "lex" in lex.carrier_name
        cop = structure_from_config({"coproduct": ["nat", "nat"]})
        assert cop.show((0, 2)) == "inl 2"

    def test_restrict_with_predicate(self):
        evens = structure_from_config({"restrict": {"of": "nat", "pred": "2 divides x"}})
        found, _ = search(evens, 6, countdown_by(2))
        assert found == 0

    def test_unknown_rejected(self):
        with pytest.raises(ValueError):
            structure_from_config({"tensor": ["nat", "nat"]})
