"""Explicit-loop kernels, compiled with numba when it is enabled.

Everything here operates on small dense arrays (2x2, 3x3, 4x4) and is written
so that numba's nopython mode accepts it unchanged.
"""

import math

import numpy as np

from ._backend import njit
from .constants import BELL_BASIS, BELL_SIGNS, PAULI_PAIRS


@njit
def jacobi_hermitian(a, tol, max_sweeps):
    n = a.shape[0]
    A = a.astype(np.complex128).copy()
    V = np.eye(n, dtype=np.complex128)
    scale = 0.0
    for i in range(n):
        for j in range(n):
            scale += abs(a[i, j]) ** 2
    scale = max(math.sqrt(scale), 1e-300)
    converged = False
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += abs(A[i, j]) ** 2
        if math.sqrt(off) <= tol * scale:
            converged = True
            break
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                mag = abs(apq)
                if mag <= 1e-300:
                    continue
                ph = apq / mag
                theta = (A[q, q].real - A[p, p].real) / (2.0 * mag)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                g_pp = c + 0j
                g_pq = s + 0j
                g_qp = -s * ph.conjugate()
                g_qq = c * ph.conjugate()
                for k in range(n):
                    akp = A[k, p]
                    akq = A[k, q]
                    A[k, p] = akp * g_pp + akq * g_qp
                    A[k, q] = akp * g_pq + akq * g_qq
                for k in range(n):
                    apk = A[p, k]
                    aqk = A[q, k]
                    A[p, k] = g_pp.conjugate() * apk + g_qp.conjugate() * aqk
                    A[q, k] = g_pq.conjugate() * apk + g_qq.conjugate() * aqk
                A[p, q] = 0.0
                A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
                for k in range(n):
                    vkp = V[k, p]
                    vkq = V[k, q]
                    V[k, p] = vkp * g_pp + vkq * g_qp
                    V[k, q] = vkp * g_pq + vkq * g_qq
    w = np.empty(n)
    for i in range(n):
        w[i] = A[i, i].real
    order = np.argsort(-w, kind="mergesort")
    return w[order], V[:, order], converged


@njit
def jacobi_symmetric(a, tol, max_sweeps):
    n = a.shape[0]
    A = a.astype(np.float64).copy()
    V = np.eye(n)
    scale = max(math.sqrt(np.sum(a * a)), 1e-300)
    converged = False
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += A[i, j] * A[i, j]
        if math.sqrt(off) <= tol * scale:
            converged = True
            break
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = A[k, p]
                    akq = A[k, q]
                    A[k, p] = c * akp - s * akq
                    A[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = A[p, k]
                    aqk = A[q, k]
                    A[p, k] = c * apk - s * aqk
                    A[q, k] = s * apk + c * aqk
                A[p, q] = 0.0
                A[q, p] = 0.0
                for k in range(n):
                    vkp = V[k, p]
                    vkq = V[k, q]
                    V[k, p] = c * vkp - s * vkq
                    V[k, q] = s * vkp + c * vkq
    w = np.empty(n)
    for i in range(n):
        w[i] = A[i, i]
    order = np.argsort(-w, kind="mergesort")
    return w[order], V[:, order], converged


@njit
def su2_euler(phi, theta, psi):
    c = math.cos(0.5 * theta)
    s = math.sin(0.5 * theta)
    u = np.empty((2, 2), dtype=np.complex128)
    u[0, 0] = complex(math.cos(-0.5 * (phi + psi)), math.sin(-0.5 * (phi + psi))) * c
    u[0, 1] = -complex(math.cos(-0.5 * (phi - psi)), math.sin(-0.5 * (phi - psi))) * s
    u[1, 0] = complex(math.cos(0.5 * (phi - psi)), math.sin(0.5 * (phi - psi))) * s
    u[1, 1] = complex(math.cos(0.5 * (phi + psi)), math.sin(0.5 * (phi + psi))) * c
    return u


@njit
def kron2(a, b):
    out = np.empty((4, 4), dtype=np.complex128)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    out[2 * i + k, 2 * j + l] = a[i, j] * b[k, l]
    return out


@njit
def core_unitary(c1, c2, c3):
    phases = np.empty(4, dtype=np.complex128)
    for k in range(4):
        arg = -0.5 * (c1 * BELL_SIGNS[k, 0] + c2 * BELL_SIGNS[k, 1] + c3 * BELL_SIGNS[k, 2])
        phases[k] = complex(math.cos(arg), math.sin(arg))
    u = np.zeros((4, 4), dtype=np.complex128)
    for i in range(4):
        for j in range(4):
            acc = 0j
            for k in range(4):
                acc += BELL_BASIS[i, k] * BELL_BASIS[j, k] * phases[k]
            u[i, j] = acc
    return u


@njit
def matmul4(a, b):
    out = np.zeros((4, 4), dtype=np.complex128)
    for i in range(4):
        for k in range(4):
            aik = a[i, k]
            if aik == 0:
                continue
            for j in range(4):
                out[i, j] += aik * b[k, j]
    return out


@njit
def conjugate4(u, rho):
    """u @ rho @ u^H for 4x4 arrays."""
    tmp = matmul4(u, rho)
    out = np.zeros((4, 4), dtype=np.complex128)
    for i in range(4):
        for j in range(4):
            acc = 0j
            for k in range(4):
                acc += tmp[i, k] * u[j, k].conjugate()
            out[i, j] = acc
    return out


@njit
def orbit_unitary(x):
    """Reduced Cartan form: core(x[0:3]) @ (euler(x[3:6]) (x) euler(x[6:9]))."""
    local = kron2(su2_euler(x[3], x[4], x[5]), su2_euler(x[6], x[7], x[8]))
    return matmul4(core_unitary(x[0], x[1], x[2]), local)


@njit
def correlation_matrix(rho):
    t = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            acc = 0.0
            for k in range(4):
                for l in range(4):
                    p = PAULI_PAIRS[i, j, l, k]
                    if p != 0:
                        acc += (rho[k, l] * p).real
            t[i, j] = acc
    return t


@njit
def m_value(rho):
    t = correlation_matrix(rho)
    y = t.T @ t
    w, _, _ = jacobi_symmetric(y, 1e-15, 60)
    return w[0] + w[1]


@njit
def orbit_m(x, rho):
    return m_value(conjugate4(orbit_unitary(x), rho))


@njit
def _simplex_order(fs):
    return np.argsort(fs, kind="mergesort")


@njit
def nelder_mead_orbit(x0, rho, step, max_iter, ftol, xtol, stall_tol):
    """Maximize orbit_m from x0 with restarted Nelder-Mead.

    Returns (x_best, m_best, iterations, converged). ``converged`` means the
    simplex collapsed (f flat to ftol over a box of side xtol) and nothing
    found afterwards, including a fresh restart, gained more than ``stall_tol``.
    """
    n = x0.size
    sim = np.empty((n + 1, n))
    fs = np.empty(n + 1)
    x = x0.copy()
    fx = -orbit_m(x, rho)
    iters = 0
    prev = np.inf
    while iters < max_iter:
        sim[0] = x
        fs[0] = fx
        for i in range(n):
            sim[i + 1] = x
            sim[i + 1, i] += step
            fs[i + 1] = -orbit_m(sim[i + 1], rho)
        collapsed = False
        while iters < max_iter:
            order = _simplex_order(fs)
            sim = sim[order].copy()
            fs = fs[order].copy()
            fspread = 0.0
            xspread = 0.0
            for i in range(1, n + 1):
                fspread = max(fspread, abs(fs[i] - fs[0]))
                for j in range(n):
                    xspread = max(xspread, abs(sim[i, j] - sim[0, j]))
            if fspread <= ftol and xspread <= xtol:
                collapsed = True
                break
            iters += 1
            cen = np.zeros(n)
            for i in range(n):
                cen += sim[i]
            cen /= n
            xr = 2.0 * cen - sim[n]
            fr = -orbit_m(xr, rho)
            if fr < fs[0]:
                xe = 3.0 * cen - 2.0 * sim[n]
                fe = -orbit_m(xe, rho)
                if fe < fr:
                    sim[n] = xe
                    fs[n] = fe
                else:
                    sim[n] = xr
                    fs[n] = fr
                continue
            if fr < fs[n - 1]:
                sim[n] = xr
                fs[n] = fr
                continue
            if fr < fs[n]:
                xc = cen + 0.5 * (xr - cen)
                fc = -orbit_m(xc, rho)
                if fc <= fr:
                    sim[n] = xc
                    fs[n] = fc
                    continue
            else:
                xc = cen + 0.5 * (sim[n] - cen)
                fc = -orbit_m(xc, rho)
                if fc < fs[n]:
                    sim[n] = xc
                    fs[n] = fc
                    continue
            for i in range(1, n + 1):
                sim[i] = sim[0] + 0.5 * (sim[i] - sim[0])
                fs[i] = -orbit_m(sim[i], rho)
        best = 0
        for i in range(1, n + 1):
            if fs[i] < fs[best]:
                best = i
        x = sim[best].copy()
        fx = fs[best]
        if not collapsed or prev - fx <= stall_tol:
            break
        prev = fx
    return x, -fx, iters, prev - fx <= stall_tol
