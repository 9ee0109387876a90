"""Horodecki M(rho) criterion, CHSH operators and linear Bell witnesses."""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from . import kernels
from .errors import NotHermitian, NotUnitVector
from .kernels.constants import PAULI
from .matcore import as_matrix, hermiticity_residual, is_unitary, sym_eigen3
from .states import _mat

LOCAL_TOL = 1e-9
UNIT_TOL = 1e-9


@dataclass(frozen=True)
class ChshAnalysis:
    m_value: float
    max_chsh: float
    local: bool
    top_eigenvalues: tuple


def analyze_chsh(rho, local_tol=LOCAL_TOL):
    """M(rho) = sum of the two largest eigenvalues of T^t T; local iff M <= 1."""
    T = kernels.correlation_matrix(np.ascontiguousarray(_mat(rho)))
    lam = sym_eigen3(T.T @ T).values
    top = (max(float(lam[0]), 0.0), max(float(lam[1]), 0.0))
    m = top[0] + top[1]
    return ChshAnalysis(m, 2.0 * np.sqrt(m), m <= 1.0 + local_tol, top)


def m_value(rho):
    return analyze_chsh(rho).m_value


def _spin(n):
    return np.einsum("i,iab->ab", n, PAULI)


@dataclass(frozen=True)
class BellOperator:
    op: np.ndarray
    directions: tuple  # (a, a', b, b')

    def expectation(self, rho):
        return float(np.trace(self.op @ _mat(rho)).real)


def _unit(v, name):
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise NotUnitVector(f"{name} must be a real 3-vector")
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > UNIT_TOL:
        raise NotUnitVector(f"|{name}| = {norm:.12g}")
    return v


def build_bell_operator(a, a_prime, b, b_prime):
    """(a.s) x ((b + b').s) + (a'.s) x ((b - b').s)."""
    a, ap = _unit(a, "a"), _unit(a_prime, "a'")
    b, bp = _unit(b, "b"), _unit(b_prime, "b'")
    op = np.kron(_spin(a), _spin(b + bp)) + np.kron(_spin(ap), _spin(b - bp))
    op = 0.5 * (op + op.conj().T)
    return BellOperator(op, (a, ap, b, bp))


def optimal_directions(rho):
    """Measurement directions attaining 2 sqrt(M(rho)).

    Built from the two dominant eigenvectors e1, e2 of T^t T: b, b' = cos x e1 +- sin x e2
    with tan x = sqrt(l2 / l1), and a, a' along T e1, T e2.
    """
    T = kernels.correlation_matrix(np.ascontiguousarray(_mat(rho)))
    lam, vecs, _ = kernels.jacobi_symmetric(T.T @ T, 1e-15, 60)
    e1, e2 = vecs[:, 0], vecs[:, 1]
    l1, l2 = max(lam[0], 0.0), max(lam[1], 0.0)
    x = np.arctan2(np.sqrt(l2), np.sqrt(l1))
    b = np.cos(x) * e1 + np.sin(x) * e2
    bp = np.cos(x) * e1 - np.sin(x) * e2
    a = _direction(T @ e1, fallback=np.array([1.0, 0.0, 0.0]))
    ap = _direction(T @ e2, fallback=_orthogonal_to(a))
    return a, ap, b / np.linalg.norm(b), bp / np.linalg.norm(bp)


def _direction(v, fallback):
    n = np.linalg.norm(v)
    return v / n if n > 1e-14 else fallback


def _orthogonal_to(a):
    trial = np.array([0.0, 1.0, 0.0]) if abs(a[1]) < 0.9 else np.array([0.0, 0.0, 1.0])
    w = trial - a * (trial @ a)
    return w / np.linalg.norm(w)


def optimal_bell_operator(rho):
    return build_bell_operator(*optimal_directions(rho))


class WitnessKind(str, Enum):
    BELL_CHSH = "BellChshWitness"
    CONJUGATED = "ConjugatedWitness"
    GENERIC = "GenericLinear"


@dataclass(frozen=True)
class WitnessOperator:
    op: np.ndarray
    kind: WitnessKind
    bound: float
    certifying_unitary: Optional[np.ndarray] = None

    def __post_init__(self):
        res = hermiticity_residual(self.op)
        if res > 1e-9:
            raise NotHermitian(f"witness operator not Hermitian (residual {res:.3e})")
        if self.kind is WitnessKind.CONJUGATED:
            if self.certifying_unitary is None or not is_unitary(self.certifying_unitary):
                raise ValueError("a conjugated witness needs a unitary certificate")

    @property
    def min_eigenvalue(self):
        return float(np.linalg.eigvalsh(self.op)[0])

    @property
    def nontrivial(self):
        """True when the operator can detect anything (has a negative eigenvalue)."""
        return self.min_eigenvalue < 0.0


def chsh_operator_to_witness(bell):
    return WitnessOperator(2.0 * np.eye(4) - bell.op, WitnessKind.BELL_CHSH, 2.0)


def generic_linear_witness(bell_op, c):
    op = as_matrix(bell_op, dims=(4,))
    res = hermiticity_residual(op)
    if res > 1e-9:
        raise NotHermitian(f"Bell operator not Hermitian (residual {res:.3e})")
    if not np.isfinite(c):
        raise ValueError("bound must be finite")
    return WitnessOperator(float(c) * np.eye(4) - op, WitnessKind.GENERIC, float(c))


def evaluate_witness(w, rho):
    return float(np.trace(w.op @ _mat(rho)).real)
