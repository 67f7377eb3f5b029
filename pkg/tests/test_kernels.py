"""Backend parity and kernel semantics."""

import pytest

from conftest import proper_divisors, sieve_smallest_prime_factor
from descent.kernels import _purepy

try:
    from descent.kernels import _core
except ImportError:
    _core = None

BACKENDS = [_purepy] + ([_core] if _core is not None else [])


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.BACKEND)
class TestKernelSemantics:
    def test_smallest_proper_divisor_matches_scan(self, backend):
        for x in range(0, 1000):
            divisors = proper_divisors(x)
            assert backend.smallest_proper_divisor(x) == (divisors[0] if divisors else 0)

    def test_is_prime_matches_sieve(self, backend):
        spf = sieve_smallest_prime_factor(2000)
        for x in range(0, 2001):
            assert backend.is_prime(x) == (x > 1 and spf[x] == x)

    def test_degenerate_inputs(self, backend):
        assert backend.smallest_proper_divisor(0) == 0
        assert backend.smallest_proper_divisor(1) == 0
        assert not backend.is_prime(0) and not backend.is_prime(1)


@pytest.mark.skipif(_core is None, reason="compiled kernel not built")
def test_backends_agree():
    for x in range(0, 3000):
        assert _core.smallest_proper_divisor(x) == _purepy.smallest_proper_divisor(x)
        assert _core.is_prime(x) == _purepy.is_prime(x)


def test_selected_backend_exposes_contract():
    from descent import kernels

    assert kernels.BACKEND in ("compiled", "pure-python")
    assert kernels.smallest_proper_divisor(91) == 7
    assert kernels.is_prime(89)


def test_env_var_forces_pure_python():
    import os
    import subprocess
    import sys

    result = subprocess.run(
        [sys.executable, "-c", "from descent import kernels; print(kernels.BACKEND)"],
        env={**os.environ, "DESCENT_PURE_PYTHON": "1"},
        capture_output=True,
        text=True,
        check=True,
    )
    assert result.stdout.strip() == "pure-python"
