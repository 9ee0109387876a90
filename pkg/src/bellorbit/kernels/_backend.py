import importlib.util
import os

ENV_FLAG = "BELLORBIT_DISABLE_NUMBA"


def numba_requested():
    return os.environ.get(ENV_FLAG, "").strip().lower() not in ("1", "true", "yes", "on")


HAVE_NUMBA = importlib.util.find_spec("numba") is not None

USE_NUMBA = HAVE_NUMBA and numba_requested()


def njit(func):
    """``numba.njit(cache=True)`` when numba is importable, identity otherwise."""
    if not HAVE_NUMBA:  # pragma: no cover
        return func
    import numba

    return numba.njit(cache=True)(func)
