"""Acceptance gate: every headline guarantee, one test each, at the
stated tolerance.  Order matches the certification ledger."""

import json
import math
import pathlib
import time

import numpy as np
import pytest

from smearprop import specfun
from smearprop.cli import (
    DEFAULT_SEED,
    IDENTITY_TOL,
    NEWINT_TOL,
    ORACLE_GRID_TOL,
    _check_identities,
    _check_newint,
    _check_oracle_grid,
)
from smearprop.gapless import (
    GaplessPairSetup,
    choi_min_eigenvalue,
    entanglement_onset,
    fig3_point,
    hs_distance_sq,
    hs_limit_largeT,
    single_channel,
    two_detector_state,
)
from smearprop.model import GaussianSmearing
from smearprop.propagators import limit_L0_W
from smearprop.qmat import (
    MU,
    Basis,
    QubitOperator,
    TwoQubitState,
    basis_change,
    eig_hermitian_4,
)
from smearprop.udw import (
    HarvestingSetup,
    asymptotic_negativity_largeT,
    asymptotic_negativity_optimal_gap,
    fig1_sweep,
    harvesting_state,
    negativity_closed,
)

FIXTURES = pathlib.Path(__file__).parent / "data" / "specfun_fixtures.json"


def test_oracle_certification_grid_50_tuples_under_60s():
    """Closed forms of all seven kinds vs independent quadrature on the
    published parameter box, single-threaded, inside the time budget."""
    t0 = time.perf_counter()
    res = _check_oracle_grid(DEFAULT_SEED, jobs=1, envelope_cut=1e-18)
    elapsed = time.perf_counter() - t0
    assert res.ok, f"max_rel_err {res.max_rel_err:.3e} > {ORACLE_GRID_TOL:.0e}"
    assert elapsed < 60.0, f"grid took {elapsed:.1f}s"


def test_identity_suite_200_tuples():
    """Commutator, symmetric, Wightman and time-ordered combinations plus
    the advanced/retarded exchange, 200 random tuples, 1e-12."""
    res = _check_identities(DEFAULT_SEED)
    assert res.ok, f"max_rel_err {res.max_rel_err:.3e} > {IDENTITY_TOL:.0e}"


def test_radial_integral_identity_20_draws():
    res = _check_newint(DEFAULT_SEED, None)
    assert res.ok, f"max_rel_err {res.max_rel_err:.3e} > {NEWINT_TOL:.0e}"


def test_pointlike_self_overlap_value():
    """Coincident zero-gap self overlap equals 1/(4 pi alpha^2) with
    alpha^2 = 1 + (sigma/T)^2, the width ratio that sets every scale."""
    worst = 0.0
    for T, sigma in ((1.0, 0.0), (1.0, 1.0), (2.0, 0.5)):
        f = GaussianSmearing(T=T, sigma=sigma)
        got = limit_L0_W(f, f).value
        want = 1.0 / (4.0 * math.pi * (1.0 + (sigma / T) ** 2))
        worst = max(worst, abs(got - want) / want)
    assert worst <= 1e-12


_FIG1_GRID = [float(v) for v in np.linspace(0.0, 6.0, 200)]
_FIG1_BASE = HarvestingSetup(lam=1.0, Omega=0.0, T=1.0, sigma=0.01, sep=5.0)


def test_dual_path_negativity_across_gap_sweep():
    """Closed-form negativity vs the eigenvalue route through the full
    density matrix, every point of the published gap sweep."""
    worst = 0.0
    for om in _FIG1_GRID:
        s = HarvestingSetup(lam=1.0, Omega=om, T=1.0, sigma=0.01, sep=5.0)
        r = harvesting_state(s)
        scale = max(r.neg, r.L_term)
        if scale > 0.0:
            worst = max(worst, abs(r.neg - r.neg_eig) / scale)
        assert r.neg == negativity_closed(s)
    assert worst <= 1e-12


def test_entanglement_beats_signalling_beyond_the_peak():
    """Some gap extracts negativity at least 10x the signalling term and
    the advantage never shrinks as the gap grows past the peak."""
    rows = fig1_sweep(_FIG1_GRID, _FIG1_BASE)
    neg = np.array([r.negativity_over_lambda2 for r in rows])
    hd = np.array([r.half_delta_over_lambda2 for r in rows])
    assert np.any((neg > 0.0) & (neg >= 10.0 * hd))
    peak = int(np.argmax(neg))
    tail_ok = (neg[peak:] > 0.0)
    ratio = neg[peak:][tail_ok] / hd[peak:][tail_ok]
    assert len(ratio) > 50
    assert np.all(np.diff(ratio) >= 0.0)


def test_asymptotic_negativity_scalings():
    """Optimal-gap tail law at scaled separations 10 and 14, and the
    long-interaction law at 50 light crossings, all overflow-free."""
    for ell, cap in ((10.0, 0.10), (14.0, 0.05)):
        s = HarvestingSetup(lam=1.0, Omega=ell / 2.0, T=1.0,
                            sigma=0.001, sep=ell)
        exact = negativity_closed(s)
        asym = asymptotic_negativity_optimal_gap(ell, 1.0)
        assert math.isfinite(exact) and exact > 0.0
        assert abs(exact - asym) <= cap * exact
    s = HarvestingSetup(lam=1.0, Omega=0.0, T=50.0, sigma=0.05, sep=1.0)
    exact = negativity_closed(s)
    asym = asymptotic_negativity_largeT(s)
    assert math.isfinite(exact) and math.isfinite(asym)
    assert abs(exact - asym) <= 0.03 * exact


def _random_pair_state(rng) -> TwoQubitState:
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    m = a @ a.conj().T
    return TwoQubitState(m=m / np.trace(m).real, basis=Basis.ENERGY)


def _random_setup(rng) -> GaplessPairSetup:
    return GaplessPairSetup(
        lam=float(rng.uniform(0.1, 1.5)),
        T=float(rng.uniform(0.2, 3.0)),
        sigma=float(rng.uniform(0.01, 0.3)),
        sep=float(rng.uniform(0.5, 4.0)),
        dt=float(rng.uniform(-1.0, 1.0)),
    )


def test_gapless_channel_positivity_and_purity():
    """Trace bitwise preserved; 100 random outputs PSD to -1e-12; 20
    process matrices PSD to -1e-10; closed purity law to 1e-13."""
    rng = np.random.default_rng(DEFAULT_SEED)
    worst_eig = 0.0
    for _ in range(100):
        rho0 = basis_change(_random_pair_state(rng), Basis.MONOPOLE)
        d = _random_setup(rng).data()
        out = two_detector_state(rho0, d)
        assert np.trace(out.m) == np.trace(rho0.m)
        worst_eig = min(worst_eig, eig_hermitian_4(out.m)[0])
    assert worst_eig >= -1e-12
    worst_choi = 0.0
    for _ in range(20):
        worst_choi = min(worst_choi, choi_min_eigenvalue(_random_setup(rng).data()))
    assert worst_choi >= -1e-10
    worst_pur = 0.0
    for _ in range(20):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        v = v / np.linalg.norm(v)
        rho = QubitOperator(np.outer(v, v.conj()))
        xi = float(rng.uniform(0.0, 2.0))
        out = single_channel(rho, xi, MU)
        purity = float(np.trace(out.m @ out.m).real)
        mexp = float(np.trace(MU.m @ rho.m).real)
        want = math.exp(-2.0 * xi) * (
            math.cosh(2.0 * xi) + mexp * mexp * math.sinh(2.0 * xi))
        worst_pur = max(worst_pur, abs(purity - want))
    assert worst_pur <= 1e-13


def test_gapless_onset_window_and_no_go_regime():
    """Entanglement first appears between 0.6 and 0.8 light crossings for
    each coupling; nothing appears at or below 0.3."""
    for lam in (0.25, 0.5, 1.0):
        onset = entanglement_onset(lam)
        assert 0.6 <= onset <= 0.8, f"lam={lam}: onset {onset:.4f}"
        worst = 0.0
        for t in np.linspace(0.02, 0.3, 29):
            worst = min(worst, fig3_point(lam, float(t)).ev_full[0])
        assert worst >= -1e-12, f"lam={lam}: min eigenvalue {worst:.3e}"


def test_gapless_distance_plateau_and_weak_coupling_law():
    for lam in (0.25, 0.5, 1.0):
        s = GaplessPairSetup(lam=lam, T=100.0, sigma=0.01, sep=1.0)
        assert abs(hs_distance_sq(s) - hs_limit_largeT(lam)) <= 1e-3
    lam = 0.1
    quartic = 5.0 * lam ** 4 / (8.0 * math.pi ** 2)
    assert abs(hs_limit_largeT(lam) - quartic) <= 0.02 * quartic


def test_special_function_fixture_grid():
    """100 committed extended-precision values, active backend, 1e-12."""
    with open(FIXTURES) as fh:
        data = json.load(fh)
    assert data["count"] == 100 and len(data["entries"]) == 100
    fns = {
        "wofz": specfun.faddeeva_w,
        "erf": specfun.erf_c,
        "erfi": specfun.erfi_c,
        "dawsn": lambda z: complex(specfun.dawson(z.real)),
        "erfcx": lambda z: complex(specfun.erfcx(z.real)),
    }
    worst = 0.0
    for fx in data["entries"]:
        z = complex(*fx["z"])
        want = complex(*fx["val"])
        got = fns[fx["fn"]](z)
        worst = max(worst, abs(got - want) / abs(want))
    assert worst <= 1e-12
