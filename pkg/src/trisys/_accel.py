"""Optional numba acceleration.

Kernels are written once in the numba-compatible subset of Python and numpy.
``jit`` compiles them with ``numba.njit`` unless numba is missing or the
environment variable ``TRISYS_DISABLE_JIT`` is set to a non-empty value other
than ``0``; in that case the plain Python function is used unchanged.
"""

from __future__ import annotations

import os

try:
    import numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAS_NUMBA = False

ENV_FLAG = "TRISYS_DISABLE_JIT"


def jit_disabled() -> bool:
    return os.environ.get(ENV_FLAG, "").strip() not in ("", "0")


JIT_ENABLED = HAS_NUMBA and not jit_disabled()


def jit(fn=None, **kwargs):
    """``numba.njit(cache=True)`` when enabled, identity otherwise.

    The original function is always reachable as ``.py_func``.
    """

    def wrap(f):
        if not JIT_ENABLED:
            f.py_func = f
            return f
        opts = {"cache": True, "nogil": True}
        opts.update(kwargs)
        return numba.njit(**opts)(f)

    if fn is None:
        return wrap
    return wrap(fn)
