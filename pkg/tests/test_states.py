import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bellorbit.errors import NotHermitian, NotPositive, TraceNotOne
from bellorbit.families import make_generalized_werner, make_werner
from bellorbit.kernels.constants import ID2, PAULI
from bellorbit.states import (
    MAXIMALLY_MIXED,
    PAULIS,
    SINGLET,
    HilbertSchmidtForm,
    from_hilbert_schmidt,
    is_absolutely_separable,
    is_entangled_ppt,
    partial_transpose,
    product_state,
    random_state,
    to_hilbert_schmidt,
    validate_state,
)
from bellorbit.unitaries import haar_random_unitary

from .conftest import random_states


def test_pauli_basis():
    for s in PAULIS:
        np.testing.assert_allclose(s @ s, ID2)
        np.testing.assert_allclose(s, s.conj().T)
        assert np.trace(s) == 0


def test_validate_examples():
    validate_state(np.eye(4) / 4)
    validate_state(SINGLET.mat)
    with pytest.raises(NotPositive, match="minimum eigenvalue"):
        validate_state(np.diag([0.6, 0.6, -0.1, -0.1]))
    with pytest.raises(TraceNotOne):
        validate_state(np.eye(4) / 2)
    m = np.eye(4) / 4 + 0j
    m[0, 1] = 0.1
    with pytest.raises(NotHermitian):
        validate_state(m)


def test_density_matrix_is_read_only():
    with pytest.raises(ValueError):
        MAXIMALLY_MIXED.mat[0, 0] = 1.0


def test_hilbert_schmidt_examples():
    hs = to_hilbert_schmidt(MAXIMALLY_MIXED)
    np.testing.assert_allclose(hs.u, 0)
    np.testing.assert_allclose(hs.v, 0)
    np.testing.assert_allclose(hs.T, 0)

    hs = to_hilbert_schmidt(SINGLET)
    np.testing.assert_allclose(hs.u, 0, atol=1e-15)
    np.testing.assert_allclose(hs.T, -np.eye(3), atol=1e-15)

    # (|0> + |1>)/sqrt2 (x) |0>: direct traces give u = x-hat, v = z-hat, t_13 = 1
    hs = to_hilbert_schmidt(product_state([1, 1], [1, 0]))
    np.testing.assert_allclose(hs.u, [1, 0, 0], atol=1e-15)
    np.testing.assert_allclose(hs.v, [0, 0, 1], atol=1e-15)
    expected = np.zeros((3, 3))
    expected[0, 2] = 1.0
    np.testing.assert_allclose(hs.T, expected, atol=1e-15)


def test_hilbert_schmidt_matches_direct_traces(rng):
    for rho in random_states(rng, 10):
        hs = to_hilbert_schmidt(rho)
        for i in range(3):
            assert abs(hs.u[i] - np.trace(rho.mat @ np.kron(PAULI[i], ID2))) < 1e-15
            for j in range(3):
                t = np.trace(rho.mat @ np.kron(PAULI[i], PAULI[j]))
                assert abs(t.imag) < 1e-12
                assert abs(hs.T[i, j] - t.real) < 1e-15


def test_from_hilbert_schmidt_examples():
    np.testing.assert_allclose(from_hilbert_schmidt(HilbertSchmidtForm(np.zeros(3), np.zeros(3), np.zeros((3, 3)))).mat, np.eye(4) / 4)
    rho = from_hilbert_schmidt(HilbertSchmidtForm(np.zeros(3), np.zeros(3), -np.eye(3)))
    np.testing.assert_allclose(rho.mat, SINGLET.mat, atol=1e-15)
    with pytest.raises(NotPositive):
        from_hilbert_schmidt(HilbertSchmidtForm(np.zeros(3), np.zeros(3), np.diag([-2.0, 0, 0])))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 4))
def test_hilbert_schmidt_round_trip(seed, rank):
    rho = random_state(np.random.default_rng(seed), rank)
    hs = to_hilbert_schmidt(rho)
    assert np.linalg.norm(hs.u) <= 1 + 1e-12 and np.linalg.norm(hs.v) <= 1 + 1e-12
    assert np.all(np.abs(hs.T) <= 1 + 1e-12)
    back = from_hilbert_schmidt(hs)
    assert np.max(np.abs(back.mat - rho.mat)) <= 1e-12


def test_partial_transpose_involution(rng):
    for rho in random_states(rng, 10):
        np.testing.assert_array_equal(partial_transpose(partial_transpose(rho)), rho.mat)


def test_ppt_examples():
    ent, lam = is_entangled_ppt(product_state([1, 2j], [0.3, 1]))
    assert not ent and lam >= -1e-12
    ent, lam = is_entangled_ppt(make_werner(0.5))
    assert ent and lam < 0
    a = 1 / np.sqrt(3)
    assert is_entangled_ppt(make_generalized_werner(0.36, a))[0]
    ent, lam = is_entangled_ppt(make_generalized_werner(0.33, a))
    assert not ent and lam >= 0
    # oracle: minimum PT eigenvalue of the generalized Werner state is (1-p)/4 - p a b
    b = np.sqrt(1 - a * a)
    for p in (0.1, 0.33, 0.36, 0.8):
        assert is_entangled_ppt(make_generalized_werner(p, a))[1] == pytest.approx((1 - p) / 4 - p * a * b, abs=1e-12)


def test_absolute_separability_examples():
    ok, margin = is_absolutely_separable(MAXIMALLY_MIXED)
    assert ok and margin == pytest.approx(0.5, abs=1e-12)
    ok, margin = is_absolutely_separable(make_werner(1 / 3))
    assert ok and abs(margin) < 1e-12
    ok, margin = is_absolutely_separable(make_werner(0.5))
    assert not ok and margin < 0


def test_absolutely_separable_stays_ppt_under_unitaries(rng):
    found = 0
    while found < 10:
        rho = random_state(rng)
        if not is_absolutely_separable(rho)[0]:
            continue
        found += 1
        for _ in range(100):
            u = haar_random_unitary(rng)
            assert not is_entangled_ppt(u @ rho.mat @ u.conj().T)[0]
