"""Optional numba acceleration.

Hot kernels are written once as plain loop code and compiled with
``numba.njit`` when numba is importable and ``SQEN_DISABLE_NUMBA`` is not
set to a truthy value.  Kernels that have a natural vectorised form also ship
a pure-numpy twin; callers go through the dispatchers in the kernel modules,
never through this flag directly.
"""
from __future__ import annotations

import os

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False


def _env_disabled() -> bool:
    return os.environ.get("SQEN_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}


USE_NUMBA = HAVE_NUMBA and not _env_disabled()


def njit(func):
    """Compile ``func`` with numba when enabled, else return it unchanged.

    With numba disabled every kernel, including ones called from other
    kernels, runs as plain Python.  ``.py_func`` exists in both cases.
    """
    if not USE_NUMBA:
        func.py_func = func
        return func
    return numba.njit(cache=True, nogil=True)(func)
