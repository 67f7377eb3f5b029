"""Engine behavior: checked descents, traces, the step bound on the naturals."""

import json
import random

import pytest
from hypothesis import given, strategies as st

from descent.engine import (
    DEFAULT_FUEL,
    Descend,
    DescentStructure,
    DescentTrace,
    Found,
    FuelExhausted,
    NonDecreasingStep,
    nat_search,
    run_steps,
    search,
    verify_trace,
)
from descent.naturals import nat_structure

NAT = nat_structure()


def countdown(x):
    return Found(0) if x == 0 else Descend(x - 1)


class TestSearch:
    def test_forced_countdown(self):
        found, trace = search(NAT, 5, countdown)
        assert found == 0
        assert trace.visited == (5, 4, 3, 2, 1, 0)
        assert trace.steps == 6

    def test_prime_divisor_step(self):
        # Independent trial division defines the step; 2 is the smallest
        # proper divisor of 12, and 2 itself has none.
        def step(x):
            for d in range(2, x):
                if x % d == 0:
                    return Descend(d)
            return Found(x)

        found, trace = search(NAT, 12, step)
        assert found == 2
        assert trace.visited == (12, 2)

    def test_increasing_step_rejected(self):
        with pytest.raises(NonDecreasingStep) as exc:
            search(NAT, 7, lambda x: Descend(x + 1))
        assert (exc.value.current, exc.value.proposed) == (7, 8)

    def test_self_descend_rejected(self):
        # Irreflexivity guard: proposing the current element is never a descent.
        with pytest.raises(NonDecreasingStep):
            search(NAT, 3, lambda x: Descend(x))

    def test_error_carries_partial_trace(self):
        try:
            search(NAT, 7, lambda x: Descend(x + 1))
        except NonDecreasingStep as exc:
            assert exc.trace.visited == (7,)
            assert exc.trace.outcome == "NonDecreasingStep"
            assert verify_trace(NAT, exc.trace)


class TestNatSearch:
    def test_at_zero_descend_is_error(self):
        with pytest.raises(NonDecreasingStep):
            nat_search(0, lambda x: Descend(0))

    def test_at_zero_found_is_one_step(self):
        found, trace = nat_search(0, lambda x: Found(x))
        assert found == 0
        assert trace.steps == 1

    def test_first_even(self):
        found, trace = nat_search(3, lambda x: Found(x) if x % 2 == 0 else Descend(x - 1))
        assert found == 2
        assert trace.steps == 2

    def test_worst_case_countdown_hits_bound(self):
        _, trace = nat_search(10000, countdown)
        assert trace.steps == 10001

    def test_rejects_negative_start(self):
        with pytest.raises(ValueError):
            nat_search(-1, countdown)

    @given(st.integers(0, 64), st.integers(0, 2**32 - 1))
    def test_step_bound_on_random_oracles(self, start, seed):
        rng = random.Random(seed)
        memo = {}

        def step(x):
            if x not in memo:
                if x == 0 or rng.random() < 0.25:
                    memo[x] = Found(x)
                else:
                    memo[x] = Descend(rng.randrange(x))
            return memo[x]

        found, trace = nat_search(start, step)
        assert trace.steps <= start + 1
        assert verify_trace(NAT, trace)
        assert step(found) == Found(found)  # replay reproduces the evidence


class TestVerifyTrace:
    def test_good_trace(self):
        trace = DescentTrace("nat", (5, 4, 0), Found(0), 3)
        assert verify_trace(NAT, trace)

    def test_repeated_element(self):
        assert not verify_trace(NAT, DescentTrace("nat", (3, 3), Found(3), 2))

    def test_increasing_pair(self):
        assert not verify_trace(NAT, DescentTrace("nat", (2, 5), Found(5), 2))

    def test_step_count_mismatch(self):
        assert not verify_trace(NAT, DescentTrace("nat", (5, 4), Found(4), 3))

    def test_found_must_match_last_visited(self):
        assert not verify_trace(NAT, DescentTrace("nat", (5, 4), Found(3), 2))


class TestRawStructures:
    def test_fuel_exhaustion(self):
        integers = DescentStructure(
            carrier_name="int",
            eq=lambda a, b: a == b,
            apart=lambda a, b: a != b,
            less=lambda a, b: a < b,  # not well-founded below
        )
        with pytest.raises(FuelExhausted) as exc:
            search(integers, 0, lambda x: Descend(x - 1), fuel=50)
        assert exc.value.fuel == 50
        assert len(exc.value.trace.visited) == 50

    def test_default_fuel_applies(self):
        raw = DescentStructure("raw-nat", NAT.eq, NAT.apart, NAT.less)
        found, trace = search(raw, 9, countdown)
        assert found == 0 and trace.steps == 10
        assert DEFAULT_FUEL > 10

    def test_run_steps_unbounded_when_fuel_none(self):
        found, _ = run_steps(NAT, 2000, countdown, fuel=None)
        assert found == 0


def test_concurrent_searches_share_a_structure():
    # Structures and oracles are pure, so parallel searches must not interfere.
    from concurrent.futures import ThreadPoolExecutor

    def run(start):
        found, trace = search(NAT, start, countdown)
        return found, trace.steps

    with ThreadPoolExecutor(max_workers=8) as pool:
        outcomes = list(pool.map(run, range(64)))
    assert outcomes == [(0, start + 1) for start in range(64)]


def test_trace_json_line():
    _, trace = search(NAT, 3, countdown)
    record = json.loads(trace.json_line())
    assert record == {
        "carrier": "nat",
        "visited": ["3", "2", "1", "0"],
        "outcome": {"found": "0"},
        "steps": 4,
    }


def test_error_trace_json_line():
    try:
        search(NAT, 7, lambda x: Descend(x + 1))
    except NonDecreasingStep as exc:
        record = json.loads(exc.trace.json_line())
        assert record["outcome"] == {"error": "NonDecreasingStep"}
