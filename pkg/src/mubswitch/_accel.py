"""Numba switch.

Set ``MUBSWITCH_DISABLE_NUMBA=1`` before import to force the pure-numpy
kernels (also used automatically when numba is not importable).
"""
import os

ENV_FLAG = "MUBSWITCH_DISABLE_NUMBA"

_disabled = os.environ.get(ENV_FLAG, "").strip().lower() not in ("", "0", "false", "no")

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and not _disabled


def njit(func):
    """``numba.njit(cache=True)`` when acceleration is on, identity otherwise."""
    if USE_NUMBA:
        return numba.njit(cache=True)(func)
    return func
