"""Two-qubit density matrices: validation, Hilbert-Schmidt (Pauli) form,
partial transpose and the spectral absolute-separability test."""

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import InvalidDimension, NotHermitian, NotPositive, TraceNotOne
from .kernels.constants import ID2, PAULI, PAULI_PAIRS
from .matcore import as_matrix, hermitian_eigen, hermiticity_residual

STATE_TOL = 1e-9
PPT_TOL = 1e-9
ABS_TOL = 1e-9


@dataclass(frozen=True)
class PauliBasis:
    s1: np.ndarray = field(default_factory=lambda: PAULI[0].copy())
    s2: np.ndarray = field(default_factory=lambda: PAULI[1].copy())
    s3: np.ndarray = field(default_factory=lambda: PAULI[2].copy())
    id2: np.ndarray = field(default_factory=lambda: ID2.copy())

    def __iter__(self):
        return iter((self.s1, self.s2, self.s3))


PAULIS = PauliBasis()


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated 4x4 density matrix. Build with :func:`validate_state`."""

    mat: np.ndarray

    def __post_init__(self):
        self.mat.setflags(write=False)

    @property
    def spectrum(self):
        return hermitian_eigen(self.mat)[0]

    def __array__(self, dtype=None, copy=None):
        return self.mat if dtype is None else self.mat.astype(dtype)


@dataclass(frozen=True)
class HilbertSchmidtForm:
    u: np.ndarray
    v: np.ndarray
    T: np.ndarray


def validate_state(m, tol=STATE_TOL):
    """Check Hermiticity, unit trace and positivity; return a DensityMatrix.

    Hermiticity residual is measured in Frobenius norm. Small anti-Hermitian
    noise below ``tol`` is symmetrized away.
    """
    if isinstance(m, DensityMatrix):
        return m
    a = as_matrix(m, dims=(4,))
    res = hermiticity_residual(a)
    if res > tol:
        raise NotHermitian(f"||m - m^H||_F = {res:.3e} exceeds {tol:.0e}")
    a = 0.5 * (a + a.conj().T)
    tr = np.trace(a).real
    if abs(tr - 1.0) > tol:
        raise TraceNotOne(f"trace = {tr:.12g}, |trace - 1| = {abs(tr - 1):.3e}")
    lam_min = hermitian_eigen(a)[0].values[-1]
    if lam_min < -tol:
        raise NotPositive(f"minimum eigenvalue {lam_min:.3e} below -{tol:.0e}")
    return DensityMatrix(a.copy())


def _mat(rho):
    if isinstance(rho, DensityMatrix):
        return rho.mat
    return as_matrix(rho, dims=(4,))


def to_hilbert_schmidt(rho):
    a = _mat(rho)
    u = np.array([np.trace(a @ np.kron(s, ID2)) for s in PAULI])
    v = np.array([np.trace(a @ np.kron(ID2, s)) for s in PAULI])
    T = np.einsum("kl,ijlk->ij", a, PAULI_PAIRS)
    return HilbertSchmidtForm(u.real.copy(), v.real.copy(), T.real.copy())


def hs_matrix(hs):
    """The raw operator (I + u.s x I + I x v.s + sum t_ij s_i x s_j) / 4, unvalidated."""
    u = np.asarray(hs.u, dtype=float)
    v = np.asarray(hs.v, dtype=float)
    T = np.asarray(hs.T, dtype=float)
    if u.shape != (3,) or v.shape != (3,) or T.shape != (3, 3):
        raise InvalidDimension("Bloch vectors must have length 3 and T must be 3x3")
    m = np.eye(4, dtype=np.complex128)
    m += np.kron(np.einsum("i,iab->ab", u, PAULI), ID2)
    m += np.kron(ID2, np.einsum("i,iab->ab", v, PAULI))
    m += np.einsum("ij,ijab->ab", T, PAULI_PAIRS)
    return m / 4.0


def from_hilbert_schmidt(hs):
    return validate_state(hs_matrix(hs))


def partial_transpose(rho):
    """Transpose over the second qubit."""
    a = _mat(rho).reshape(2, 2, 2, 2)
    return a.transpose(0, 3, 2, 1).reshape(4, 4).copy()


def is_entangled_ppt(rho, tol=PPT_TOL):
    """Peres-Horodecki test. Returns (entangled, min eigenvalue of the partial transpose)."""
    lam_min = float(hermitian_eigen(partial_transpose(rho))[0].values[-1])
    return lam_min < -tol, lam_min


def absolute_separability_margin(eigenvalues):
    lam = np.sort(np.asarray(eigenvalues, dtype=float))[::-1]
    lam2, lam4 = max(lam[1], 0.0), max(lam[3], 0.0)
    return float(lam[2] + 2.0 * np.sqrt(lam2 * lam4) - lam[0])


def is_absolutely_separable(rho, tol=ABS_TOL):
    """Spectral test lambda1 <= lambda3 + 2 sqrt(lambda2 lambda4). Returns (verdict, margin)."""
    margin = absolute_separability_margin(hermitian_eigen(_mat(rho))[0].values)
    return margin >= -tol, margin


def correlation_matrix(rho):
    return np.asarray(kernels.correlation_matrix(np.ascontiguousarray(_mat(rho))))


def random_state(rng, rank=4):
    """GG^H / Tr(GG^H) for a 4 x rank complex Gaussian G."""
    g = rng.standard_normal((4, rank)) + 1j * rng.standard_normal((4, rank))
    m = g @ g.conj().T
    return validate_state(m / np.trace(m).real)


def random_pure_state(rng):
    return random_state(rng, rank=1)


def ket(amplitudes):
    psi = np.asarray(amplitudes, dtype=np.complex128)
    return psi / np.linalg.norm(psi)


def projector(psi):
    psi = ket(psi)
    return validate_state(np.outer(psi, psi.conj()))


def product_state(a, b):
    return validate_state(np.kron(_one_qubit(a), _one_qubit(b)))


def _one_qubit(x):
    x = np.asarray(x, dtype=np.complex128)
    if x.shape == (2,):
        x = x / np.linalg.norm(x)
        return np.outer(x, x.conj())
    return x


MAXIMALLY_MIXED = validate_state(np.eye(4) / 4)
SINGLET = projector([0, 1, -1, 0])
PHI_PLUS = projector([1, 0, 0, 1])
