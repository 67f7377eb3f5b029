"""Arithmetic kernels with a compiled fast path.

The compiled extension (Cython) is preferred; the pure-Python module is a
drop-in fallback selected at import time.  Set ``DESCENT_PURE_PYTHON=1`` to
force the fallback (used by the benchmark and the backend-parity tests).
Both backends implement identical contracts.
"""

import os

if os.environ.get("DESCENT_PURE_PYTHON"):
    from . import _purepy as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _purepy as _impl

BACKEND = _impl.BACKEND
smallest_proper_divisor = _impl.smallest_proper_divisor
is_prime = _impl.is_prime

__all__ = ["BACKEND", "smallest_proper_divisor", "is_prime"]
