"""Conjugated witnesses W^B = U_e^H (2I - B) U_e for states that leave the
Bell-local set under some global unitary U_e."""

from dataclasses import dataclass

import numpy as np

from .chsh import (
    WitnessKind,
    WitnessOperator,
    analyze_chsh,
    chsh_operator_to_witness,
    evaluate_witness,
    optimal_bell_operator,
)
from .errors import NotDetectable
from .matcore import as_matrix, is_unitary
from .orbit import OrbitConfig, Verdict, classify_al
from .states import _mat

VIOLATION_TOL = 1e-9


def conjugated_witness(w, u):
    """U^H W U with the certificate recorded."""
    u = as_matrix(u, dims=(4,))
    op = u.conj().T @ w.op @ u
    op = 0.5 * (op + op.conj().T)
    return WitnessOperator(op, WitnessKind.CONJUGATED, w.bound, u)


def build_conjugated_witness(rho, certificate=None, config=OrbitConfig()):
    """Witness that is negative on rho and nonnegative on every absolutely local state.

    Without an explicit ``certificate`` the orbit search supplies U_e; raises
    NotDetectable when no unitary is known to push rho out of the local set.
    """
    a = _mat(rho)
    if certificate is None:
        cls = classify_al(a, config)
        if cls.verdict is not Verdict.NON_ABSOLUTELY_LOCAL:
            raise NotDetectable(f"state classified {cls.verdict.value} (M_max = {cls.m_max:.6g})")
        certificate = cls.certificate
    u = as_matrix(certificate, dims=(4,))
    if not is_unitary(u):
        raise ValueError("certificate is not unitary")
    moved = u @ a @ u.conj().T
    if analyze_chsh(moved).local:
        raise NotDetectable("the supplied unitary does not produce a Bell-CHSH violation")
    w = chsh_operator_to_witness(optimal_bell_operator(moved))
    wb = conjugated_witness(w, u)
    if evaluate_witness(wb, a) >= 0.0:  # pragma: no cover - guarded by the locality check above
        raise NotDetectable("constructed witness does not detect the state")
    return wb


@dataclass(frozen=True)
class WitnessReport:
    n: int
    min_value: float
    violations: list
    values: np.ndarray

    @property
    def ok(self):
        return not self.violations


def verify_witness_on_al(w, states, n=None, tol=VIOLATION_TOL):
    """Evaluate w on absolutely local samples; violations are reported, not raised.

    ``states`` is an iterable of density matrices (a generator is fine); at
    most ``n`` of them are consumed.
    """
    values, violations = [], []
    for i, sigma in enumerate(states):
        if n is not None and i >= n:
            break
        v = evaluate_witness(w, sigma)
        values.append(v)
        if v < -tol:
            violations.append((i, v))
    values = np.array(values)
    return WitnessReport(len(values), float(values.min()) if len(values) else np.nan, violations, values)
