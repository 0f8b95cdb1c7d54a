"""Backend selection for the hot kernels.

Kernels exist twice: a numba ``@njit`` version and a numpy/pure-Python
fallback.  Set ``LBTREE_NO_NUMBA=1`` to force the fallback path.  When numba
is not installed the fallback is used automatically and the ``jit`` decorator
degrades to the identity, so the numba variants stay importable (and slow).
"""
from __future__ import annotations

import os

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

_DISABLED = os.environ.get("LBTREE_NO_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

USE_NUMBA = HAVE_NUMBA and not _DISABLED


def jit(func):
    if HAVE_NUMBA:
        return numba.njit(cache=True)(func)
    return func


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
