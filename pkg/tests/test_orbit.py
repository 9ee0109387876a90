import numpy as np
import pytest

from bellorbit.chsh import analyze_chsh, chsh_operator_to_witness, evaluate_witness, optimal_bell_operator
from bellorbit.families import bell_diagonal_correlations, make_bell_diagonal, make_werner
from bellorbit.orbit import (
    STRUCTURED_CORES,
    OrbitConfig,
    Verdict,
    bell_diagonal_arrangements,
    classify_al,
    maximize_over_orbit,
    orbit_sample,
    spectral_cap,
    start_points,
)
from bellorbit.states import MAXIMALLY_MIXED, is_absolutely_separable, product_state, random_pure_state, random_state, to_hilbert_schmidt
from bellorbit.unitaries import cnot, conjugate, haar_random_unitary

from .conftest import haar_batch, m_batch, orbit_batch, random_states

AL, NAL, BOUNDARY = Verdict.ABSOLUTELY_LOCAL, Verdict.NON_ABSOLUTELY_LOCAL, Verdict.BOUNDARY


def cap_closed_form(lam):
    l1, l2, l3, l4 = np.sort(lam)[::-1]
    return 2 * ((l1 - l4) ** 2 + (l2 - l3) ** 2)


def test_maximally_mixed():
    r = maximize_over_orbit(MAXIMALLY_MIXED)
    assert r.m_max == pytest.approx(0.0, abs=1e-12)
    assert r.verdict is AL and r.converged


def test_product_state_example():
    a, b = np.sqrt(1 / 3), np.sqrt(2 / 3)
    rho = product_state([a, b], [1, 0])
    cls = classify_al(rho)
    assert cls.verdict is NAL
    assert cls.m_max == pytest.approx(2.0, abs=1e-6)
    # CNOT alone reaches 1 + 4 a^2 b^2
    assert analyze_chsh(conjugate(cnot(), rho)).m_value == pytest.approx(17 / 9, abs=1e-12)


@pytest.mark.parametrize("p,expected,verdict", [(0.6, 0.72, AL), (0.75, 1.125, NAL)])
def test_werner_examples(p, expected, verdict):
    cls = classify_al(make_werner(p))
    assert cls.m_max == pytest.approx(expected, abs=1e-4)
    assert cls.verdict is verdict
    assert (cls.certificate is not None) == (verdict is NAL)


def test_bell_diagonal_example():
    w = (0.4, 0.3, 0.2, 0.1)
    rho = make_bell_diagonal(*w)
    t = bell_diagonal_correlations(*w)
    np.testing.assert_allclose(to_hilbert_schmidt(rho).T, np.diag(t), atol=1e-15)
    sq = np.sort(t**2)[::-1]
    assert analyze_chsh(rho).m_value == pytest.approx(sq[0] + sq[1], abs=1e-12)
    cls = classify_al(rho)
    assert cls.m_max == pytest.approx(cap_closed_form(w), abs=1e-6)
    assert cls.verdict is AL


def test_werner_above_chsh_threshold_certified():
    rho = make_werner(1 / np.sqrt(2) + 0.05)
    cls = classify_al(rho)
    assert cls.verdict is NAL and cls.certificate is not None
    moved = conjugate(cls.certificate, rho)
    w = chsh_operator_to_witness(optimal_bell_operator(moved))
    assert evaluate_witness(w, moved) < -1e-6


def test_absolutely_separable_states_are_absolutely_local(rng):
    found = 0
    while found < 10:
        rho = random_state(rng)
        if not is_absolutely_separable(rho)[0]:
            continue
        found += 1
        assert classify_al(rho, OrbitConfig(starts=16)).verdict is AL


def test_orbit_sample_examples(rng):
    assert all(m == pytest.approx(0.0, abs=1e-12) for _, m in orbit_sample(MAXIMALLY_MIXED, 20, rng))
    rho = make_werner(0.6)
    lam = np.linalg.eigvalsh(rho.mat)
    for u, m in orbit_sample(rho, 500, rng):
        assert m <= 0.72 + 1e-6
        np.testing.assert_allclose(np.linalg.eigvalsh(u @ rho.mat @ u.conj().T), lam, atol=1e-12)
    a = [m for _, m in orbit_sample(rho, 5, np.random.default_rng(3))]
    b = [m for _, m in orbit_sample(rho, 5, np.random.default_rng(3))]
    assert a == b
    with pytest.raises(ValueError):
        next(orbit_sample(rho, 0, rng))


def test_start_points_deterministic():
    cfg = OrbitConfig(starts=20, seed=5)
    a, b = start_points(cfg), start_points(cfg)
    assert len(a) == 20
    for x, y in zip(a, b):
        np.testing.assert_array_equal(x, y)
    np.testing.assert_array_equal(a[1][:3], STRUCTURED_CORES[1])
    assert len(start_points(OrbitConfig(starts=3))) == 3
    other = start_points(OrbitConfig(starts=20, seed=6))
    assert not np.array_equal(a[-1], other[-1])


def test_spectral_cap_closed_form(rng):
    for rho in random_states(rng, 50) + random_states(rng, 10, rank=2):
        lam = np.linalg.eigvalsh(rho.mat)
        assert spectral_cap(rho) == pytest.approx(cap_closed_form(lam), abs=1e-12)
    arr = bell_diagonal_arrangements([0.7, 0.1, 0.1, 0.1])
    assert arr.shape == (24,)
    assert arr.max() == pytest.approx(2 * 0.6**2, abs=1e-12)


@pytest.mark.slow
def test_spectral_cap_bounds_haar_sweep(rng):
    """10^5 Haar conjugations per state never exceed the Bell-diagonal cap."""
    states = random_states(rng, 3) + [make_werner(0.6), random_states(rng, 1, rank=2)[0]]
    for rho in states:
        cap = spectral_cap(rho)
        worst = -np.inf
        for _ in range(10):
            worst = max(worst, m_batch(orbit_batch(rho.mat, haar_batch(rng, 10_000))).max())
        assert worst <= cap + 1e-9


def test_optimizer_attains_but_never_exceeds_cap(rng):
    cfg = OrbitConfig(starts=16)
    for rho in random_states(rng, 10) + random_states(rng, 5, rank=2):
        r = maximize_over_orbit(rho, cfg)
        assert r.m_max <= r.spectral_cap + 1e-6
        assert r.m_max >= r.spectral_cap - 1e-6
        assert r.m_max >= r.m_initial - 1e-9


def test_certificate_soundness(rng):
    for rho in random_states(rng, 10) + [make_werner(0.8)]:
        r = maximize_over_orbit(rho, OrbitConfig(starts=16))
        recheck = analyze_chsh(conjugate(r.best_unitary, rho)).m_value
        assert recheck == pytest.approx(r.m_max, abs=1e-8)
        if r.verdict is NAL:
            assert recheck > 1 + 1e-6


def test_orbit_max_is_spectrum_determined(rng):
    cfg = OrbitConfig(starts=16)
    for rho in random_states(rng, 30):
        u = haar_random_unitary(rng)
        a = maximize_over_orbit(rho, cfg).m_max
        b = maximize_over_orbit(conjugate(u, rho), cfg).m_max
        assert abs(a - b) <= 1e-4


def test_pure_states_reach_two(rng):
    for _ in range(10):
        r = maximize_over_orbit(random_pure_state(rng), OrbitConfig(starts=16))
        assert r.m_max == pytest.approx(2.0, abs=1e-6)
        assert r.verdict is NAL


def test_classification_is_deterministic():
    rho = make_werner(0.5)
    a = maximize_over_orbit(rho, OrbitConfig(seed=11))
    b = maximize_over_orbit(rho, OrbitConfig(seed=11))
    assert a.m_max == b.m_max
    np.testing.assert_array_equal(a.best_unitary, b.best_unitary)
    assert a.seed == 11


def test_boundary_verdicts():
    # the CHSH boundary itself lies within the decision margin
    r = maximize_over_orbit(make_werner(1 / np.sqrt(2)))
    assert r.verdict is BOUNDARY and "margin" in r.diagnostic
    # a search too short to reach the cap cannot certify local
    rho = np.diag([0.7, 0.3, 0, 0]).astype(complex)  # M = 0.16, cap = 1.16
    r = maximize_over_orbit(rho, OrbitConfig(starts=1, max_iter=1))
    assert r.m_max < 1 - 1e-4 and r.spectral_cap > 1
    assert r.verdict is BOUNDARY and "spectral cap" in r.diagnostic
