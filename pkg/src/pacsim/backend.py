"""Kernel backend selection.

Hot decoder loops are written as plain Python over numpy arrays and compiled
with numba by default.  Set PACSIM_BACKEND=numpy to run the same functions
uncompiled (slow, but dependency-light and bit-compatible for small problems).
"""

import os

_env = os.environ.get("PACSIM_BACKEND", "").strip().lower()

if _env in ("", "numba"):
    try:
        import numba

        USE_NUMBA = True
    except ImportError:
        if _env == "numba":
            raise
        USE_NUMBA = False
elif _env == "numpy":
    USE_NUMBA = False
else:
    raise RuntimeError(f"PACSIM_BACKEND must be 'numba' or 'numpy', got {_env!r}")

BACKEND = "numba" if USE_NUMBA else "numpy"


def maybe_njit(func=None, **options):
    """@njit under the numba backend, identity decorator otherwise."""
    def wrap(f):
        if USE_NUMBA:
            options.setdefault("cache", True)
            return numba.njit(**options)(f)
        return f

    if func is not None:
        return wrap(func)
    return wrap
