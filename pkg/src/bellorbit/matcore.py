"""Dense 2x2 / 4x4 complex matrix helpers and the Jacobi eigensolvers.

Matrices are plain numpy arrays; the helpers here add the dimension and
finiteness checks the rest of the package relies on.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import EigenFailure, InvalidDimension, NonFinite, NotHermitian

HERM_TOL = 1e-9
EIG_TOL = 1e-9


@dataclass(frozen=True)
class Spectrum:
    """Real eigenvalues sorted in descending order."""

    values: np.ndarray

    @property
    def dim(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]


def as_matrix(m, dims=(2, 4)):
    """Coerce to a complex square array of an allowed size, rejecting NaN/Inf."""
    a = np.asarray(getattr(m, "mat", m), dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] not in dims:
        raise InvalidDimension(f"expected a square matrix of size {dims}, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonFinite("matrix has NaN or Inf entries")
    return a


def as_sym3(m):
    a = np.asarray(m, dtype=np.float64)
    if a.shape != (3, 3):
        raise InvalidDimension(f"expected a 3x3 matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonFinite("matrix has NaN or Inf entries")
    # mirror the upper triangle so the result is exactly symmetric
    return np.triu(a) + np.triu(a, 1).T


def kron(a, b):
    a = as_matrix(a, dims=(2,))
    b = as_matrix(b, dims=(2,))
    return np.kron(a, b)


def matmul(a, b):
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise InvalidDimension(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def adjoint(m):
    return as_matrix(m).conj().T


def trace(m):
    return complex(np.trace(as_matrix(m)))


def frobenius_norm(m):
    return float(np.linalg.norm(as_matrix(m)))


def hermiticity_residual(m):
    a = as_matrix(m)
    return float(np.linalg.norm(a - a.conj().T))


def hermitian_eigen(m, herm_tol=HERM_TOL):
    """Eigen-decomposition of a Hermitian 2x2 or 4x4 matrix by cyclic complex Jacobi.

    Returns ``(Spectrum, V)`` with eigenvectors in the columns of ``V`` ordered
    like the (descending) eigenvalues.
    """
    a = as_matrix(m)
    res = hermiticity_residual(a)
    if res > herm_tol:
        raise NotHermitian(f"||m - m^H||_F = {res:.3e} exceeds {herm_tol:.0e}")
    a = 0.5 * (a + a.conj().T)
    w, v, ok = kernels.jacobi_hermitian(a, kernels.constants.JACOBI_TOL, kernels.constants.JACOBI_MAX_SWEEPS)
    if not ok:
        raise EigenFailure("complex Jacobi did not converge")
    err = np.linalg.norm((v * w) @ v.conj().T - a)
    if err > EIG_TOL * max(1.0, np.linalg.norm(a)):
        raise EigenFailure(f"reconstruction error {err:.3e}")
    return Spectrum(np.asarray(w)), np.asarray(v)


def sym_eigen3(m):
    a = as_sym3(m)
    w, _, ok = kernels.jacobi_symmetric(a, kernels.constants.JACOBI_TOL, kernels.constants.JACOBI_MAX_SWEEPS)
    if not ok:
        raise EigenFailure("real Jacobi did not converge")
    return Spectrum(np.asarray(w))


def is_unitary(u, tol=1e-9):
    u = as_matrix(u)
    return np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0])) <= tol
