import numpy as np
import pytest

from bellorbit.families import make_werner
from bellorbit.kernels.constants import PAULI
from bellorbit.states import random_state


@pytest.fixture(scope="session", autouse=True)
def compiled_kernels():
    """Trigger numba compilation once, before any timed test runs."""
    from bellorbit.orbit import OrbitConfig, classify_al

    classify_al(make_werner(0.5), OrbitConfig(starts=1, max_iter=5))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def werner():
    return make_werner


def random_states(rng, n, rank=4):
    return [random_state(rng, rank) for _ in range(n)]


def haar_batch(rng, n):
    """Batch Haar sampler written independently of unitaries.haar_random_unitary."""
    z = (rng.standard_normal((n, 4, 4)) + 1j * rng.standard_normal((n, 4, 4))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=1, axis2=2)
    return q * (d / np.abs(d))[:, None, :]


def m_batch(rhos):
    """M for a stack of density matrices via numpy eigvalsh (oracle path, no Jacobi)."""
    pp = np.einsum("iab,jcd->ijacbd", PAULI, PAULI).reshape(3, 3, 4, 4)
    T = np.einsum("nkl,ijlk->nij", rhos, pp).real
    lam = np.linalg.eigvalsh(np.einsum("nki,nkj->nij", T, T))
    return lam[:, 1] + lam[:, 2]


def orbit_batch(rho, us):
    return np.einsum("nab,bc,ndc->nad", us, np.asarray(rho), us.conj())


def chsh_bruteforce(T, rng, starts=6):
    """max over directions of a.T(b+b') + a'.T(b-b') by multi-start BFGS on spherical angles."""
    from scipy.optimize import minimize

    def unit(th, ph):
        return np.array([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)])

    def neg(x):
        a, ap, b, bp = (unit(x[2 * k], x[2 * k + 1]) for k in range(4))
        return -(a @ T @ (b + bp) + ap @ T @ (b - bp))

    best = -np.inf
    for _ in range(starts):
        res = minimize(neg, rng.uniform(0, 2 * np.pi, 8), method="BFGS", options={"gtol": 1e-10})
        best = max(best, -res.fun)
    return best


def absolutely_separable_samples(rng):
    """Rejection sampler: a random state mixed with I/4 at a uniform weight, kept
    only when the spectral absolute-separability test accepts it."""
    from bellorbit.states import is_absolutely_separable

    while True:
        t = rng.uniform()
        rho = (1 - t) * random_state(rng).mat + t * np.eye(4) / 4
        if is_absolutely_separable(rho)[0]:
            yield rho


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(capsys):
    """record(n, ok, detail) prints one PASS/FAIL line and keeps it for the summary."""

    def record(n, ok, detail):
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        with capsys.disabled():
            print(f"\n{line}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
