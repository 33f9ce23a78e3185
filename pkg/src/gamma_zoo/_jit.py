"""Optional numba acceleration.

Set ``GAMMA_ZOO_NO_JIT=1`` to force the pure-numpy kernels even when numba is
importable. The flag is read once, at import time.
"""

from __future__ import annotations

import os

_FLAG = os.environ.get("GAMMA_ZOO_NO_JIT", "").strip().lower()

try:
    import numba
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    numba = None

USE_NUMBA = numba is not None and _FLAG not in ("1", "true", "yes", "on")


def njit(fn):
    """``numba.njit(cache=True)`` when available, identity otherwise."""
    if numba is None:
        return fn
    return numba.njit(cache=True)(fn)
