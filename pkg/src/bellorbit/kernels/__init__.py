"""Hot numeric kernels with a selectable backend.

The numba backend is used unless ``BELLORBIT_DISABLE_NUMBA=1`` is set in the
environment before import (or numba is missing), in which case the pure
numpy/scipy implementations are bound instead. Both modules stay importable
directly as ``kernels.loops`` and ``kernels.vectorized``.
"""

from . import constants
from . import _loops as loops
from . import _vectorized as vectorized
from ._backend import ENV_FLAG, HAVE_NUMBA, USE_NUMBA

BACKEND = "numba" if USE_NUMBA else "numpy"

_impl = loops if USE_NUMBA else vectorized

jacobi_hermitian = _impl.jacobi_hermitian
jacobi_symmetric = _impl.jacobi_symmetric
su2_euler = _impl.su2_euler
core_unitary = _impl.core_unitary
orbit_unitary = _impl.orbit_unitary
correlation_matrix = _impl.correlation_matrix
m_value = _impl.m_value
orbit_m = _impl.orbit_m
nelder_mead_orbit = _impl.nelder_mead_orbit

__all__ = [
    "BACKEND",
    "constants",
    "ENV_FLAG",
    "HAVE_NUMBA",
    "USE_NUMBA",
    "loops",
    "vectorized",
    "jacobi_hermitian",
    "jacobi_symmetric",
    "su2_euler",
    "core_unitary",
    "orbit_unitary",
    "correlation_matrix",
    "m_value",
    "orbit_m",
    "nelder_mead_orbit",
]
