"""Optional numba acceleration.

Set ``KHOVANOV_DISABLE_NUMBA=1`` to force the pure numpy/Python kernels.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and os.environ.get(
    "KHOVANOV_DISABLE_NUMBA", "").lower() not in ("1", "true", "yes")


def njit(*args, **kwargs):
    """``numba.njit`` when acceleration is enabled, otherwise the identity."""
    if not USE_NUMBA:
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda fn: fn
    kwargs.setdefault("cache", True)
    return numba.njit(*args, **kwargs)
