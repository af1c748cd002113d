"""Numba detection and the jit shim used by the hot kernels.

Kernels are written once in nopython-compatible numpy and compiled with
``numba.njit`` when available.  Setting the environment variable
``QCHERNOFF_NO_NUMBA=1`` (or uninstalling numba) selects the pure-numpy
fallback: the same functions, uncompiled.  ``benchmarks/bench_kernels.py``
times the two paths against each other.
"""

import os

_DISABLE_FLAG = "QCHERNOFF_NO_NUMBA"

NUMBA_ENABLED = False
if os.environ.get(_DISABLE_FLAG, "0") not in ("1", "true", "True", "yes"):
    try:
        from numba import njit as _numba_njit

        NUMBA_ENABLED = True
    except ImportError:
        NUMBA_ENABLED = False


def maybe_jit(func):
    """Compile ``func`` with numba when enabled, else return it unchanged."""
    if NUMBA_ENABLED:
        return _numba_njit(cache=True)(func)
    return func
