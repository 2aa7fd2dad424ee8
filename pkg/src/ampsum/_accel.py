"""Optional numba acceleration.

Set ``AMPSUM_NUMBA=0`` to force the pure numpy/python kernels.
"""

import os

try:
    from numba import njit as _njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and os.environ.get("AMPSUM_NUMBA", "1") not in ("0", "false", "no")


def jit(fn):
    """Compile ``fn`` with numba when enabled; otherwise return it unchanged."""
    if USE_NUMBA:
        return _njit(cache=True)(fn)
    return fn


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
