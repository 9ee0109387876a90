"""Pure numpy/scipy versions of the kernels in ``_loops``.

Same signatures and semantics; used when numba is disabled and as the
reference path in the backend-agreement tests and the benchmark. The
eigensolvers defer to LAPACK instead of repeating the Jacobi sweeps.
"""

import numpy as np
from scipy.optimize import minimize

from .constants import BELL_BASIS, BELL_SIGNS, PAULI_PAIRS


def _eigh_desc(a):
    w, v = np.linalg.eigh(a)
    return w[::-1].copy(), v[:, ::-1].copy(), True


def jacobi_hermitian(a, tol, max_sweeps):
    """LAPACK stand-in for the Jacobi loop kernel (tol and max_sweeps unused)."""
    return _eigh_desc(np.asarray(a, dtype=np.complex128))


def jacobi_symmetric(a, tol, max_sweeps):
    return _eigh_desc(np.asarray(a, dtype=np.float64))


def su2_euler(phi, theta, psi):
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array(
        [
            [np.exp(-0.5j * (phi + psi)) * c, -np.exp(-0.5j * (phi - psi)) * s],
            [np.exp(0.5j * (phi - psi)) * s, np.exp(0.5j * (phi + psi)) * c],
        ]
    )


def kron2(a, b):
    return np.kron(a, b)


def core_unitary(c1, c2, c3):
    phases = np.exp(-0.5j * (BELL_SIGNS @ np.array([c1, c2, c3], dtype=float)))
    return (BELL_BASIS * phases) @ BELL_BASIS.T


def matmul4(a, b):
    return a @ b


def conjugate4(u, rho):
    return u @ rho @ u.conj().T


def orbit_unitary(x):
    local = np.kron(su2_euler(*x[3:6]), su2_euler(*x[6:9]))
    return core_unitary(*x[0:3]) @ local


def correlation_matrix(rho):
    return np.einsum("kl,ijlk->ij", rho, PAULI_PAIRS).real


def m_value(rho):
    t = correlation_matrix(rho)
    w, _, _ = jacobi_symmetric(t.T @ t, 1e-15, 60)
    return w[0] + w[1]


def orbit_m(x, rho):
    return m_value(conjugate4(orbit_unitary(x), rho))


def nelder_mead_orbit(x0, rho, step, max_iter, ftol, xtol, stall_tol):
    """scipy Nelder-Mead with the same restart-on-collapse contract as the loop kernel."""
    n = x0.size
    x = np.array(x0, dtype=float)
    fx = -orbit_m(x, rho)
    iters = 0
    prev = np.inf
    while iters < max_iter:
        simplex = np.vstack([x, x + step * np.eye(n)])
        res = minimize(
            lambda z: -orbit_m(z, rho),
            x,
            method="Nelder-Mead",
            options={
                "maxiter": max_iter - iters,
                "maxfev": 100 * max_iter,
                "xatol": xtol,
                "fatol": ftol,
                "initial_simplex": simplex,
            },
        )
        iters += max(int(res.nit), 1)
        if res.fun <= fx:
            x, fx = res.x, float(res.fun)
        if not res.success or prev - fx <= stall_tol:
            break
        prev = fx
    return x, -fx, iters, prev - fx <= stall_tol
