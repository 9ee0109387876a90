"""Two-qubit unitaries: Euler-angle local gates, the nonlocal core
exp(-i/2 sum_k c_k s_k x s_k), Cartan (KAK) composition and decomposition,
named gates and Haar sampling."""

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .kernels.constants import BELL_SIGNS, MAGIC_BASIS, PAULI
from .matcore import as_matrix, hermitian_eigen
from .states import _mat, validate_state

_HALF_PI = 0.5 * np.pi


def _triple(x):
    x = np.asarray(x, dtype=float).reshape(3)
    if not np.all(np.isfinite(x)):
        raise ValueError("angles must be finite")
    return x


@dataclass(frozen=True)
class CartanParams:
    """U = (U_A x U_B) U_d(core) (V_A x V_B), local factors as Z-Y-Z Euler triples."""

    core: tuple = (0.0, 0.0, 0.0)
    local_pre: tuple = ((0.0, 0.0, 0.0), (0.0, 0.0, 0.0))
    local_post: tuple = ((0.0, 0.0, 0.0), (0.0, 0.0, 0.0))

    def __post_init__(self):
        object.__setattr__(self, "core", tuple(float(v) for v in _triple(self.core)))
        for name in ("local_pre", "local_post"):
            pair = getattr(self, name)
            object.__setattr__(self, name, tuple(tuple(float(v) for v in _triple(t)) for t in pair))

    @classmethod
    def from_reduced(cls, x):
        """9-vector (core, V_A euler, V_B euler) with identity post factors."""
        x = np.asarray(x, dtype=float)
        return cls(core=x[0:3], local_pre=(x[3:6], x[6:9]))

    @property
    def reduced(self):
        return np.concatenate([self.core, *self.local_pre])

    def as_dict(self):
        return {
            "core": list(self.core),
            "local_pre": [list(t) for t in self.local_pre],
            "local_post": [list(t) for t in self.local_post],
        }


def local_unitary(euler):
    """exp(-i phi s3/2) exp(-i theta s2/2) exp(-i psi s3/2)."""
    phi, theta, psi = _triple(euler)
    return np.asarray(kernels.su2_euler(phi, theta, psi))


def nonlocal_core(c):
    """exp(-(i/2)(c1 s1 x s1 + c2 s2 x s2 + c3 s3 x s3)), exact via the Bell basis."""
    c1, c2, c3 = _triple(c)
    return np.asarray(kernels.core_unitary(c1, c2, c3))


def compose_cartan(p):
    pre = np.kron(local_unitary(p.local_pre[0]), local_unitary(p.local_pre[1]))
    post = np.kron(local_unitary(p.local_post[0]), local_unitary(p.local_post[1]))
    return post @ nonlocal_core(p.core) @ pre


def cnot():
    """First qubit controls: |10> <-> |11>."""
    return np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
        dtype=np.complex128,
    )


def swap():
    return np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
        dtype=np.complex128,
    )


def haar_random_unitary(rng, dim=4):
    """QR of a complex Ginibre matrix with the R-diagonal phases folded into Q."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def conjugate(u, rho):
    u = as_matrix(u, dims=(4,))
    return validate_state(u @ _mat(rho) @ u.conj().T)


def phase_distance(u, v):
    """min over phi of ||u - e^{i phi} v||_F."""
    u, v = as_matrix(u), as_matrix(v)
    ov = np.trace(v.conj().T @ u)
    ph = ov / abs(ov) if abs(ov) > 0 else 1.0
    return float(np.linalg.norm(u - ph * v))


def rotation_from_unitary(u2):
    """SO(3) matrix Q with u (n.s) u^H = (Q n).s."""
    u2 = as_matrix(u2, dims=(2,))
    q = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            q[i, j] = 0.5 * np.trace(PAULI[i] @ u2 @ PAULI[j] @ u2.conj().T).real
    return q


def _to_su(u):
    det = np.linalg.det(u)
    return u / det ** (1.0 / u.shape[0])


def euler_angles(u2):
    """Z-Y-Z angles reproducing a 2x2 unitary up to global phase."""
    u = _to_su(as_matrix(u2, dims=(2,)))
    theta = 2.0 * np.arctan2(abs(u[1, 0]), abs(u[0, 0]))
    plus = np.angle(u[1, 1]) if abs(u[1, 1]) > 1e-12 else 0.0
    minus = np.angle(u[1, 0]) if abs(u[1, 0]) > 1e-12 else 0.0
    return np.array([plus + minus, theta, plus - minus])


def split_local(k):
    """Factor a 4x4 a (x) b into (a, b); exact up to a scalar shared between them."""
    r = as_matrix(k, dims=(4,)).reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)
    uu, s, vh = np.linalg.svd(r)
    a = np.sqrt(s[0]) * uu[:, 0].reshape(2, 2)
    b = np.sqrt(s[0]) * vh[0].reshape(2, 2)
    return a, b


def _simultaneous_real_diag(m):
    # m is complex symmetric unitary: Re m and Im m commute
    for r in (0.6180339887, 1.4142135623, 2.7182818284, 0.3183098861, 5.0):
        _, p = np.linalg.eigh(m.real + r * m.imag)
        d = p.T @ m @ p
        if np.linalg.norm(d - np.diag(np.diag(d))) < 1e-10:
            return p, np.diag(d)
    raise ArithmeticError("could not diagonalize the symmetric unitary")


def decompose_cartan(u):
    """KAK decomposition: CartanParams with compose_cartan(p) equal to u up to phase."""
    u = _to_su(as_matrix(u, dims=(4,)))
    up = MAGIC_BASIS.conj().T @ u @ MAGIC_BASIS
    p, d = _simultaneous_real_diag(up.T @ up)
    if np.linalg.det(p) < 0:
        p[:, 0] = -p[:, 0]
    theta = 0.5 * np.angle(d)
    if abs(np.exp(1j * theta.sum()) - 1.0) > 1e-6:
        theta[0] += np.pi
    o1 = up @ p @ np.diag(np.exp(-1j * theta))
    o2 = p.T
    k1 = MAGIC_BASIS @ o1.real @ MAGIC_BASIS.conj().T
    k2 = MAGIC_BASIS @ o2 @ MAGIC_BASIS.conj().T
    core = -0.5 * (BELL_SIGNS.T @ theta)
    ua, ub = split_local(k1)
    va, vb = split_local(k2)
    return CartanParams(
        core=core,
        local_pre=(euler_angles(va), euler_angles(vb)),
        local_post=(euler_angles(ua), euler_angles(ub)),
    )


def canonicalize_core(c):
    """Map core coefficients into the Weyl chamber pi/2 >= c1 >= c2 >= |c3|.

    The returned triple generates a core that is locally equivalent to the
    input one (shifts by pi, paired sign flips and permutations are all
    absorbed by local unitaries).
    """
    c = _triple(c).copy()
    c = np.mod(c + _HALF_PI, np.pi) - _HALF_PI  # (-pi/2, pi/2]
    c[np.isclose(c, -_HALF_PI, atol=1e-12)] = _HALF_PI
    c = c[np.argsort(-np.abs(c), kind="stable")]
    if c[0] < 0:
        c[0], c[2] = -c[0], -c[2]
    if c[1] < 0:
        c[1], c[2] = -c[1], -c[2]
    if c[2] < 0 and np.isclose(c[0], _HALF_PI, atol=1e-12):
        c[2] = -c[2]
    return c


def local_invariants(u):
    """Makhlin invariants (G1 complex, G2 real); equal iff locally equivalent."""
    u = _to_su(as_matrix(u, dims=(4,)))
    up = MAGIC_BASIS.conj().T @ u @ MAGIC_BASIS
    m = up.T @ up
    tr = np.trace(m)
    g1 = tr**2 / 16.0
    g2 = ((tr**2 - np.trace(m @ m)) / 4.0).real
    return complex(g1), float(g2)


def spectral_pairing_unitary(src, dst):
    """A unitary mapping src to dst when both share a spectrum (eigenvectors paired by rank)."""
    _, vs = hermitian_eigen(_mat(src))
    _, vd = hermitian_eigen(_mat(dst))
    return vd @ vs.conj().T


@dataclass(frozen=True)
class LocalRotation:
    q: np.ndarray = field(default_factory=lambda: np.eye(3))

    @classmethod
    def from_unitary(cls, u2):
        return cls(rotation_from_unitary(u2))
