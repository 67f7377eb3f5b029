"""Acceptance criteria, one test per criterion, at their stated scales.

Each test prints a single PASS/FAIL line (visible with ``pytest -s`` or in
captured output on failure).  Expected values come from independent
oracles: the sieve, brute-force minima, linear scans, and exhaustive
enumeration of small carriers.
"""

import functools
import itertools
import json
import random
import time

import pytest

from conftest import linear_scan_non_descent, sieve_smallest_prime_factor
from descent import arithmetic, cli, dsl
from descent.checks import (
    incoherent_family,
    parity_indexed_family,
    random_finite_nat_structure,
    random_nat_oracle,
    random_predicate_ast,
    random_step_oracle,
    random_total_subset,
)
from descent.combinators import (
    CoherenceViolated,
    check_dichotomous,
    check_family_coherence,
    check_strong,
    coproduct,
    lex_product,
    product,
    sigma,
    two_point_family,
)
from descent.complemented import clnp_least, locate, locator_from_least
from descent.engine import Found, search, verify_trace
from descent.naturals import (
    MUTATION_KINDS,
    check_axiom_suite,
    find_non_descent,
    mutated_structure,
    nat_structure,
)


def criterion(number, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"ACCEPTANCE {number} ({title}): FAIL")
                raise
            print(f"ACCEPTANCE {number} ({title}): PASS")

        return run

    return wrap


@criterion(1, "prime-divisor soundness, both routes, under 5 s")
def test_c1_prime_divisor_soundness():
    limit = 10_000
    spf = sieve_smallest_prime_factor(limit)
    started = time.perf_counter()
    for n in range(2, limit + 1):
        descent_result = arithmetic.prime_divisor_descent(n)
        clnp_result = arithmetic.prime_divisor_clnp(n)
        for result in (descent_result, clnp_result):
            assert arithmetic.is_prime_oracle(result.p)
            assert n % result.p == 0
        assert descent_result.p == spf[n]
    elapsed = time.perf_counter() - started
    assert elapsed < 5.0, f"took {elapsed:.2f} s"


@criterion(2, "least element equals brute force; locators agree")
def test_c2_clnp_oracle_equivalence():
    rng = random.Random(256256)
    for _ in range(500):
        pair, provers = random_total_subset(rng, 256)
        inhabitant = rng.choice(sorted(provers))
        cert = clnp_least(pair, inhabitant)
        assert cert.mu == min(provers)
        for x1 in sorted(provers):
            assert locator_from_least(pair, cert, x1) == locate(pair, x1)


@criterion(3, "descent step bound start + 1")
def test_c3_descent_bound():
    rng = random.Random(512512)
    nat = nat_structure()
    for i in range(1000):
        start = rng.randint(0, 512)
        step = random_nat_oracle(rng, worst_case=(i % 20 == 0))
        _, trace = search(nat, start, step)
        assert trace.steps <= start + 1
        assert verify_trace(nat, trace)


@criterion(4, "axiom suite exhaustive; mutations fail")
def test_c4_axiom_suite():
    for bound in (2, 8, 64):
        report = check_axiom_suite(bound)
        assert report.passed, report.failing()
    for kind in MUTATION_KINDS:
        report = check_axiom_suite(8, mutated_structure(kind))
        assert not report.passed
        for law in report.failing():
            assert report.result(law).counterexample is not None


@criterion(5, "combinator searches Found-certified; coproduct agrees with sigma")
def test_c5_combinator_soundness():
    rng = random.Random(200200)
    builders = {
        "product": product,
        "coproduct": coproduct,
        "lex": lex_product,
        "sigma": lambda X, Y: sigma(two_point_family(X, Y)),
    }
    for name, build in builders.items():
        for _ in range(200):
            X = random_finite_nat_structure(rng)
            Y = random_finite_nat_structure(rng)
            S = build(X, Y)
            assert len(S.samples) <= 16
            if not S.samples:
                continue
            start = rng.choice(S.samples)
            step = random_step_oracle(rng, S)
            found, trace = search(S, start, step)
            assert step(found) == Found(found), name
            assert verify_trace(S, trace), name
    for _ in range(50):
        X = random_finite_nat_structure(rng)
        Y = random_finite_nat_structure(rng)
        cop = coproduct(X, Y)
        sig = sigma(two_point_family(X, Y))
        for w, v in itertools.product(cop.samples, repeat=2):
            assert cop.eq(w, v) == sig.eq(w, v)
            assert cop.apart(w, v) == sig.apart(w, v)
            assert cop.less(w, v) == sig.less(w, v)
        if cop.samples:
            start = rng.choice(cop.samples)
            step = random_step_oracle(rng, cop)
            found_c, trace_c = search(cop, start, step)
            found_s, trace_s = search(sig, start, step)
            assert found_c == found_s
            assert trace_c.visited == trace_s.visited
            assert trace_c.outcome == trace_s.outcome


@criterion(6, "strong/dichotomous propagation on exhaustive [0,8] samples")
def test_c6_flag_propagation():
    nat = nat_structure()
    line = tuple(range(9))
    pairs = tuple(itertools.product(line, line))
    tagged = tuple((t, v) for t in (0, 1) for v in line)

    assert check_strong(nat, line).status == "pass"
    assert check_dichotomous(nat, line).status == "pass"

    prod = product(nat, nat)
    assert prod.strong and check_strong(prod, pairs).status == "pass"
    dichotomy = check_dichotomous(prod, pairs)
    assert dichotomy.status == "fail"
    a, b = dichotomy.counterexample
    assert prod.apart(a, b) and not prod.less(a, b) and not prod.less(b, a)

    cop = coproduct(nat, nat)
    assert cop.strong and cop.dichotomous
    assert check_strong(cop, tagged).status == "pass"
    assert check_dichotomous(cop, tagged).status == "pass"

    lex = lex_product(nat, nat)
    assert lex.strong and check_strong(lex, pairs).status == "pass"
    assert check_dichotomous(lex, pairs).status == "pass"

    sig = sigma(two_point_family(nat, nat))
    assert sig.strong and sig.dichotomous
    assert check_strong(sig, tagged).status == "pass"
    assert check_dichotomous(sig, tagged).status == "pass"


@criterion(7, "non-descent index equals the linear scan")
def test_c7_find_non_descent():
    rng = random.Random(500500)
    sequences = []
    for _ in range(494):
        kind = rng.choice(["constant", "decreasing-then-flat", "increasing", "random"])
        if kind == "constant":
            c = rng.randint(0, 50)
            sequences.append(lambda n, c=c: c)
        elif kind == "increasing":
            base = rng.randint(0, 20)
            sequences.append(lambda n, base=base: base + n)
        elif kind == "decreasing-then-flat":
            top = rng.randint(1, 80)
            sequences.append(lambda n, top=top: max(top - n, 0))
        else:
            table = {}

            def alpha(n, table=table, rng=rng):
                if n not in table:
                    table[n] = rng.randint(0, 60)
                return table[n]

            sequences.append(alpha)
    sequences.append(lambda n: 7)
    sequences.append(lambda n: n)
    sequences.append(lambda n: max(10 - n, 0))
    sequences.append(lambda n: 0)
    sequences.append(lambda n: max(80 - 2 * n, 3))
    sequences.append(lambda n: (5 if n == 0 else 1))
    assert len(sequences) == 500
    for alpha in sequences:
        assert find_non_descent(alpha) == linear_scan_non_descent(alpha)


@criterion(8, "predicate round-trip; documented CLI runs")
def test_c8_dsl_and_cli(capsys):
    rng = random.Random(1000_1000)
    for _ in range(1000):
        ast = random_predicate_ast(rng)
        assert dsl.parse(dsl.to_text(ast)) == ast

    def run(*argv):
        code = cli.main(list(argv))
        out = capsys.readouterr().out
        return code, out

    code, out = run("least", "--a1", "x = 2", "--a0", "x = 3", "--start", "2", "--json")
    assert code == 0 and json.loads(out)["mu"] == 2

    code, out = run(
        "least",
        "--a1", "2 divides x and x > 3",
        "--a0", "not (2 divides x and x > 3)",
        "--start", "22", "--json",
    )
    assert code == 0 and json.loads(out)["mu"] == 4

    code, _ = run("least", "--a1", "x > 5", "--a0", "x > 3", "--start", "7")
    assert code == 2


@criterion(9, "transport coherence holds; incoherence rejected")
def test_c9_transport_coherence(capsys):
    rng = random.Random(100100)
    for _ in range(100):
        family = parity_indexed_family(rng)
        check_family_coherence(family)
    with pytest.raises(CoherenceViolated):
        sigma(incoherent_family())
