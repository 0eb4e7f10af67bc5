"""Detector-pair harvesting: state assembly, negativity routes, limits."""

import math

import numpy as np
import pytest

from conftest import rel_err
from smearprop.model import DetectorParams, GaussianSmearing
from smearprop.oracle import quad_GF_momentum
from smearprop.udw import (
    G_AB_closed,
    HarvestingSetup,
    PERTURBATIVE_P_LIMIT,
    asymptotic_GF_largeL,
    asymptotic_negativity_largeT,
    asymptotic_negativity_optimal_gap,
    excitation_probability,
    fig1_sweep,
    harvesting_state,
    negativity_closed,
    signalling_half_delta,
    single_detector_ground_final,
)

_SQRT_PI = math.sqrt(math.pi)


def _det(lam=0.1, T=1.0, Omega=0.0, sigma=0.0) -> DetectorParams:
    return DetectorParams(
        lam=lam, smearing=GaussianSmearing(T=T, Omega=Omega, sigma=sigma))


def test_excitation_probability_zero_gap_value():
    for sigma in (0.0, 1.0, 0.5):
        d = _det(lam=0.3, T=2.0, sigma=sigma)
        al2 = 1.0 + (sigma / 2.0) ** 2
        want = 0.3**2 / (4.0 * math.pi * al2)
        assert rel_err(excitation_probability(d), want) <= 1e-14


def test_excitation_probability_gap_asymmetry():
    """A negative gap detector de-excites more readily than a positive
    gap one excites; both branches stay finite and positive."""
    p_plus = excitation_probability(_det(Omega=2.0))
    p_minus = excitation_probability(_det(Omega=-2.0))
    assert 0.0 < p_plus < p_minus
    # continuity across the branch split at zero gap
    eps = 1e-9
    p0 = excitation_probability(_det(Omega=0.0))
    assert abs(excitation_probability(_det(Omega=eps)) - p0) <= 1e-8 * p0
    assert abs(excitation_probability(_det(Omega=-eps)) - p0) <= 1e-8 * p0


def test_excitation_probability_large_gap_suppression():
    assert excitation_probability(_det(Omega=30.0)) < 1e-6


def test_single_detector_final_state():
    r = single_detector_ground_final(_det(lam=0.2, Omega=1.0))
    m = r.state.m
    assert abs(m[0, 0] + m[1, 1] - 1.0) <= 1e-15
    assert m[1, 1] == r.p_e
    with pytest.warns(UserWarning):
        single_detector_ground_final(_det(lam=3.0))
    assert excitation_probability(_det(lam=3.0)) > PERTURBATIVE_P_LIMIT


def test_nonlocal_term_matches_momentum_oracle():
    s = HarvestingSetup(lam=1.0, Omega=1.0, T=1.0, sigma=0.01, sep=5.0)
    a = DetectorParams(lam=s.lam, smearing=s.smearing_a(+1))
    b = DetectorParams(lam=s.lam, smearing=s.smearing_b(+1))
    q = quad_GF_momentum(a, b)
    assert rel_err(G_AB_closed(s), q.value) <= 1e-8


def test_nonlocal_term_even_in_time_shift():
    base = dict(lam=0.5, Omega=0.8, T=1.0, sigma=0.1, sep=3.0)
    plus = G_AB_closed(HarvestingSetup(dt=0.7, **base))
    minus = G_AB_closed(HarvestingSetup(dt=-0.7, **base))
    assert rel_err(abs(plus), abs(minus)) <= 1e-13


def test_harvesting_state_structure():
    s = HarvestingSetup(lam=0.1, Omega=2.0, T=1.0, sigma=0.01, sep=5.0)
    r = harvesting_state(s)
    m = r.rho.m
    assert abs(np.trace(m) - 1.0) <= 1e-15
    assert m[1, 1] == m[2, 2] == r.L_term
    assert m[0, 3] == -r.G_AB.conjugate()
    assert m[1, 2] == r.W_AB
    # entries the expansion order leaves empty
    assert m[0, 1] == m[0, 2] == m[1, 3] == m[2, 3] == 0.0


def test_dual_path_negativity_consistency():
    for om in (0.0, 1.0, 2.5, 4.0):
        s = HarvestingSetup(lam=0.1, Omega=om, T=1.0, sigma=0.01, sep=5.0)
        r = harvesting_state(s)
        assert abs(r.neg - r.neg_eig) <= 1e-12 * max(r.neg, r.L_term)
        assert r.neg == negativity_closed(s)


def test_full_spectrum_negativity_differs_at_higher_order():
    """The corner block contributes an extra pair of order lam^4 terms to
    the full spectrum; the residual must stay bounded by that order."""
    s = HarvestingSetup(lam=0.5, Omega=2.0, T=1.0, sigma=0.01, sep=5.0)
    r = harvesting_state(s)
    lam4 = s.lam**4
    assert abs(r.neg_full - r.neg_eig) <= 10.0 * lam4
    assert abs(r.neg_full - r.neg_eig) > 0.0


def test_signalling_estimator_matches_imag_nonlocal_part():
    """At zero time shift the nonlocal term's imaginary part carries the
    symmetric-propagator content exactly."""
    for sep in (1.0, 3.0, 8.0):
        s = HarvestingSetup(lam=0.7, Omega=0.6, T=1.0, sigma=0.2, sep=sep)
        half_delta = signalling_half_delta(s)
        assert rel_err(half_delta, abs(G_AB_closed(s).imag)) <= 1e-12


def test_signalling_estimator_guards():
    with pytest.raises(ValueError):
        signalling_half_delta(
            HarvestingSetup(lam=1.0, Omega=0.0, T=1.0, sigma=0.0, sep=1.0))
    with pytest.warns(UserWarning):
        signalling_half_delta(
            HarvestingSetup(lam=1.0, Omega=0.0, T=1.0, sigma=1e-12, sep=1.0))


def test_fig1_sweep_is_coupling_normalized():
    grid = [0.5, 1.0, 2.0]
    a = fig1_sweep(grid, HarvestingSetup(
        lam=1.0, Omega=0.0, T=1.0, sigma=0.01, sep=5.0))
    b = fig1_sweep(grid, HarvestingSetup(
        lam=0.3, Omega=0.0, T=1.0, sigma=0.01, sep=5.0))
    for ra, rb in zip(a, b):
        assert ra.OmegaT == rb.OmegaT
        assert ra.negativity_over_lambda2 == rb.negativity_over_lambda2
        assert ra.half_delta_over_lambda2 == rb.half_delta_over_lambda2


def test_asymptotic_forms_are_finite_and_positive():
    assert asymptotic_negativity_optimal_gap(10.0, 1.0) > 0.0
    s = HarvestingSetup(lam=1.0, Omega=0.0, T=50.0, sigma=0.05, sep=1.0)
    assert asymptotic_negativity_largeT(s) > 0.0
    s2 = HarvestingSetup(lam=1.0, Omega=0.5, T=1.0, sigma=0.01, sep=20.0)
    assert asymptotic_GF_largeL(s2) > 0.0


def test_setup_validation():
    with pytest.raises(ValueError):
        HarvestingSetup(lam=1.0, Omega=0.0, T=0.0, sigma=0.1, sep=1.0)
    with pytest.raises(ValueError):
        HarvestingSetup(lam=1.0, Omega=0.0, T=1.0, sigma=0.1, sep=0.0)
    with pytest.raises(ValueError):
        HarvestingSetup(lam=-1.0, Omega=0.0, T=1.0, sigma=0.1, sep=1.0)
