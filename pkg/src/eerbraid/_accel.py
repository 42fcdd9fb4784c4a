"""JIT switch for the numeric kernels.

Set ``EERBRAID_DISABLE_NUMBA=1`` to run every kernel as plain Python over
numpy arrays. The same source is used on both paths.
"""

from __future__ import annotations

import os

_FLAG = "EERBRAID_DISABLE_NUMBA"


def _numba_requested() -> bool:
    return os.environ.get(_FLAG, "").strip().lower() not in {"1", "true", "yes", "on"}


USE_NUMBA = False
if _numba_requested():
    try:
        import numba

        USE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        USE_NUMBA = False


def njit(*args, **kwargs):
    """``numba.njit`` when enabled, identity decorator otherwise."""
    if USE_NUMBA:
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]

    def wrap(fn):
        return fn

    return wrap


def backend() -> str:
    return "numba" if USE_NUMBA else "python"
