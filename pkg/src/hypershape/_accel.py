"""Optional numba acceleration.

Set ``HYPERSHAPE_NO_NUMBA=1`` to force the pure-numpy path even when numba
is importable.  The flag is read once at import time.
"""
import os


def _noop_jit(*args, **kwargs):
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]

    def wrap(f):
        return f

    return wrap


def _have_numba():
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


_DISABLED = os.environ.get("HYPERSHAPE_NO_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")

HAVE_NUMBA = _have_numba()
USE_NUMBA = HAVE_NUMBA and not _DISABLED

if USE_NUMBA:
    from numba import njit
else:
    njit = _noop_jit


def default_backend():
    return "numba" if USE_NUMBA else "numpy"
