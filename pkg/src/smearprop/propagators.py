"""Closed-form smeared two-point bi-distributions of the massless field.

Every general-position formula is organised around scaled special-function
primitives from :mod:`smearprop.specfun` so that no intermediate factor like
exp(M) or erfi(z) is ever materialised on its own; only products whose
exponents have provably bounded real part are evaluated.  The controlling
combinations, for smearings (T1, t1, Omega1, sigma1, L1) and
(T2, t2, Omega2, sigma2, L2):

    S      = T1^2 + T2^2
    Sigma2 = S + sigma1^2 + sigma2^2          (positive-frequency scale)
    Sig2s  = S + 2 sigma^2                    (equal-sigma G-family scale)
    D      = Omega1 T1^2 - Omega2 T2^2
    u      = dt + i D,  dt = t1 - t2
    M      = (Omega1^2 T1^2 + Omega2^2 T2^2) / 2
    phi    = Omega1 t1 + Omega2 t2
    zeta_pm = (u +- sep) / (sqrt(2) Sigma)

Cauchy-Schwarz gives D^2 <= 2 M S <= 2 M Sigma^2, which bounds
Re(-M - zeta^2) <= 0 and keeps w-products finite; the same bound covers the
coincidence limits.  The G-family additionally uses

    a_minus = (sep S + 2 sigma^2 u) / (2 sigma sqrt(S) Sig2)
    a_plus  = (sep S - 2 sigma^2 u) / (2 sigma sqrt(S) Sig2)

with the exact exponent identity
-zeta_mp^2 - a_mp^2 = -u^2/(2S) - sep^2/(4 sigma^2), so the erf pieces are
regrouped into bounded w-products as well.

Retarded support convention: retarded(f1, f2) is non-zero when f1 sits to
the future of f2, advanced(f1, f2) = retarded(f2, f1).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .model import (
    G_FAMILY,
    BiDistKind,
    GaussianSmearing,
    PairGeometry,
    PropagatorValue,
    pair_geometry,
)
from .specfun import faddeeva_w, wexp

_SQRT2 = math.sqrt(2.0)
_SQRT_PI = math.sqrt(math.pi)
_TWO_PI = 2.0 * math.pi

EQUAL_SIGMA_MESSAGE = "closed form requires equal sigma; use verify/oracle"


@dataclass(frozen=True)
class _PairScales:
    sep: float
    dt: float
    S: float
    Sigma2: float
    M: float
    D: float
    phi: float
    u: complex


def _scales(f1: GaussianSmearing, f2: GaussianSmearing) -> _PairScales:
    geo = pair_geometry(f1, f2)
    S = f1.T**2 + f2.T**2
    D = f1.Omega * f1.T**2 - f2.Omega * f2.T**2
    return _PairScales(
        sep=geo.sep,
        dt=geo.dt,
        S=S,
        Sigma2=S + f1.sigma**2 + f2.sigma**2,
        M=0.5 * (f1.Omega**2 * f1.T**2 + f2.Omega**2 * f2.T**2),
        D=D,
        phi=f1.Omega * f1.t0 + f2.Omega * f2.t0,
        u=complex(geo.dt, D),
    )


def _pv(value: complex, kind: BiDistKind) -> PropagatorValue:
    bad = not (math.isfinite(value.real) and math.isfinite(value.imag))
    return PropagatorValue(value=value, kind=kind, overflow=bad)


def _require_sep(p: _PairScales, name: str) -> None:
    if p.sep == 0.0:
        raise ValueError(
            f"{name} needs sep > 0; use the coincidence-limit variant for sep = 0"
        )


# ---------------------------------------------------------------------------
# positive-frequency family: any sigma1, sigma2 >= 0


def general_W(f1: GaussianSmearing, f2: GaussianSmearing) -> PropagatorValue:
    """Vacuum two-point value <phi(f1) phi(f2)> at separated centers."""
    p = _scales(f1, f2)
    _require_sep(p, "general_W")
    Sigma = math.sqrt(p.Sigma2)
    C = f1.T * f2.T / (2.0 * math.sqrt(_TWO_PI) * p.sep * Sigma)
    zp = (p.u + p.sep) / (_SQRT2 * Sigma)
    zm = (p.u - p.sep) / (_SQRT2 * Sigma)
    val = 0.5j * C * cmath.exp(1j * p.phi) * (wexp(p.M, -zp) - wexp(p.M, -zm))
    return _pv(val, BiDistKind.WIGHTMAN)


def general_H(f1: GaussianSmearing, f2: GaussianSmearing) -> PropagatorValue:
    """Anticommutator expectation; equals W(f1,f2) + W(f2,f1)."""
    p = _scales(f1, f2)
    _require_sep(p, "general_H")
    Sigma = math.sqrt(p.Sigma2)
    C = f1.T * f2.T / (2.0 * math.sqrt(_TWO_PI) * p.sep * Sigma)
    zp = (p.u + p.sep) / (_SQRT2 * Sigma)
    zm = (p.u - p.sep) / (_SQRT2 * Sigma)
    gm = cmath.exp(-p.M - zm * zm)
    gp = cmath.exp(-p.M - zp * zp)
    val = 1j * C * cmath.exp(1j * p.phi) * (
        gm - wexp(p.M, -zm) - gp + wexp(p.M, -zp)
    )
    return _pv(val, BiDistKind.HADAMARD)


def general_E(f1: GaussianSmearing, f2: GaussianSmearing) -> PropagatorValue:
    """Commutator expectation (times -i), the causal bracket."""
    p = _scales(f1, f2)
    _require_sep(p, "general_E")
    Sigma = math.sqrt(p.Sigma2)
    C = f1.T * f2.T / (2.0 * math.sqrt(_TWO_PI) * p.sep * Sigma)
    zp = (p.u + p.sep) / (_SQRT2 * Sigma)
    zm = (p.u - p.sep) / (_SQRT2 * Sigma)
    val = C * cmath.exp(1j * p.phi) * (
        cmath.exp(-p.M - zp * zp) - cmath.exp(-p.M - zm * zm)
    )
    return _pv(val, BiDistKind.CAUSAL)


# ---------------------------------------------------------------------------
# G-family: requires sigma1 = sigma2 > 0

def _g_family_guard(f1: GaussianSmearing, f2: GaussianSmearing) -> float:
    if f1.sigma != f2.sigma:
        raise ValueError(EQUAL_SIGMA_MESSAGE)
    if f1.sigma == 0.0:
        raise ValueError(
            "sigma = 0 is not admissible for retarded/advanced/symmetric/"
            "Feynman closed forms"
        )
    return f1.sigma


def _g_pieces(f1, f2):
    sigma = _g_family_guard(f1, f2)
    p = _scales(f1, f2)
    _require_sep(p, "G-family closed form")
    Sig2s = p.S + 2.0 * sigma * sigma
    Sig2 = math.sqrt(Sig2s)
    sqS = math.sqrt(p.S)
    C2 = f1.T * f2.T / (2.0 * math.sqrt(_TWO_PI) * p.sep * Sig2)
    zm = (p.u - p.sep) / (_SQRT2 * Sig2)
    zp = (p.u + p.sep) / (_SQRT2 * Sig2)
    den = 2.0 * sigma * sqS * Sig2
    am = (p.sep * p.S + 2.0 * sigma * sigma * p.u) / den
    ap = (p.sep * p.S - 2.0 * sigma * sigma * p.u) / den
    # shared bounded exponent: -M - zeta^2 - a^2 for either (zeta, a) pairing
    base = -p.M - p.u * p.u / (2.0 * p.S) - p.sep * p.sep / (4.0 * sigma * sigma)
    return p, C2, zm, zp, am, ap, base


def _g_term(c: float, z: complex, a: complex, M: float, base: complex) -> complex:
    # (c + erf(a)) exp(-M - z^2), with the erf piece folded into one
    # w-product so the exponent stays bounded on both erf branches
    s = 1.0 if a.real >= 0.0 else -1.0
    out = (c + s) * cmath.exp(-M - z * z)
    out -= s * cmath.exp(base) * faddeeva_w(1j * s * a)
    return out


def general_GR(f1: GaussianSmearing, f2: GaussianSmearing) -> PropagatorValue:
    """Retarded two-point value; supported when f1 is to the future of f2."""
    p, C2, zm, zp, am, ap, base = _g_pieces(f1, f2)
    val = -0.5 * C2 * cmath.exp(1j * p.phi) * (
        _g_term(1.0, zm, am, p.M, base) + _g_term(-1.0, zp, ap, p.M, base)
    )
    return _pv(val, BiDistKind.RETARDED)


def general_GA(f1: GaussianSmearing, f2: GaussianSmearing) -> PropagatorValue:
    """Advanced two-point value: general_GR with the roles reversed."""
    p, C2, zm, zp, am, ap, base = _g_pieces(f1, f2)
    val = -0.5 * C2 * cmath.exp(1j * p.phi) * (
        _g_term(-1.0, zm, am, p.M, base) + _g_term(1.0, zp, ap, p.M, base)
    )
    return _pv(val, BiDistKind.ADVANCED)


def general_Delta(f1: GaussianSmearing, f2: GaussianSmearing) -> PropagatorValue:
    """Symmetric combination, retarded + advanced."""
    p, C2, zm, zp, am, ap, base = _g_pieces(f1, f2)
    val = -C2 * cmath.exp(1j * p.phi) * (
        _g_term(0.0, zm, am, p.M, base) + _g_term(0.0, zp, ap, p.M, base)
    )
    return _pv(val, BiDistKind.SYMMETRIC)


def general_GF(f1: GaussianSmearing, f2: GaussianSmearing) -> PropagatorValue:
    """Time-ordered value, assembled as H/2 + i Delta/2."""
    h = general_H(f1, f2)
    d = general_Delta(f1, f2)
    val = 0.5 * h.value + 0.5j * d.value
    return PropagatorValue(
        value=val, kind=BiDistKind.FEYNMAN, overflow=h.overflow or d.overflow
    )


# ---------------------------------------------------------------------------
# coincident-center limits (sep = 0)

def _require_coincident(f1, f2):
    geo = pair_geometry(f1, f2)
    if geo.sep != 0.0:
        raise ValueError("coincidence-limit form needs sep = 0")
    return geo


def limit_L0_W(f1: GaussianSmearing, f2: GaussianSmearing) -> PropagatorValue:
    """sep -> 0 limit of general_W (removable; the 1/sep poles cancel)."""
    _require_coincident(f1, f2)
    p = _scales(f1, f2)
    Sigma = math.sqrt(p.Sigma2)
    pref = f1.T * f2.T / (_TWO_PI * p.Sigma2)
    val = pref * cmath.exp(1j * p.phi) * (
        math.exp(-p.M)
        - math.sqrt(math.pi / 2.0) * (p.u / Sigma) * 1j * wexp(p.M, -p.u / (_SQRT2 * Sigma))
    )
    return _pv(val, BiDistKind.WIGHTMAN)


def _limit_E_value(p: _PairScales, T1: float, T2: float, Sig2s: float) -> complex:
    Sig = math.sqrt(Sig2s)
    return (
        -T1 * T2 * (p.u / (math.sqrt(_TWO_PI) * Sig2s * Sig))
        * cmath.exp(1j * p.phi - p.M - p.u * p.u / (2.0 * Sig2s))
    )


def limit_L0_E(f1: GaussianSmearing, f2: GaussianSmearing) -> PropagatorValue:
    _require_coincident(f1, f2)
    p = _scales(f1, f2)
    return _pv(_limit_E_value(p, f1.T, f2.T, p.Sigma2), BiDistKind.CAUSAL)


def limit_L0_H(f1: GaussianSmearing, f2: GaussianSmearing) -> PropagatorValue:
    w = limit_L0_W(f1, f2)
    e = limit_L0_E(f1, f2)
    val = 2.0 * w.value - 1j * e.value
    return PropagatorValue(
        value=val, kind=BiDistKind.HADAMARD, overflow=w.overflow or e.overflow
    )


def limit_L0_GR(f1: GaussianSmearing, f2: GaussianSmearing) -> PropagatorValue:
    """sep -> 0 limit of general_GR; still needs sigma1 = sigma2 > 0."""
    sigma = _g_family_guard(f1, f2)
    _require_coincident(f1, f2)
    p = _scales(f1, f2)
    Sig2s = p.S + 2.0 * sigma * sigma
    Sig2 = math.sqrt(Sig2s)
    sqS = math.sqrt(p.S)
    a0 = sigma * p.u / (sqS * Sig2)
    s = 1.0 if a0.real >= 0.0 else -1.0
    # exp(-M - u^2/(2 Sig2s)) erf(a0) regrouped via the exponent identity
    # -u^2/(2 Sig2s) - a0^2 = -u^2/(2 S)
    g_narrow = cmath.exp(-p.M - p.u * p.u / (2.0 * Sig2s))
    g_wide = cmath.exp(-p.M - p.u * p.u / (2.0 * p.S))
    erf_piece = s * g_narrow - s * g_wide * faddeeva_w(1j * s * a0)
    bracket = (2.0 * p.u / Sig2s) * (g_narrow + erf_piece)
    bracket += (2.0 * sqS / (_SQRT_PI * sigma * Sig2)) * g_wide
    val = -(f1.T * f2.T * cmath.exp(1j * p.phi) / (4.0 * math.sqrt(_TWO_PI) * Sig2)) * bracket
    return _pv(val, BiDistKind.RETARDED)


def limit_L0_GA(f1: GaussianSmearing, f2: GaussianSmearing) -> PropagatorValue:
    sigma = _g_family_guard(f1, f2)
    _require_coincident(f1, f2)
    p = _scales(f1, f2)
    gr = limit_L0_GR(f1, f2)
    e = _limit_E_value(p, f1.T, f2.T, p.S + 2.0 * sigma * sigma)
    return PropagatorValue(
        value=gr.value - e, kind=BiDistKind.ADVANCED, overflow=gr.overflow
    )


def limit_L0_Delta(f1: GaussianSmearing, f2: GaussianSmearing) -> PropagatorValue:
    sigma = _g_family_guard(f1, f2)
    _require_coincident(f1, f2)
    p = _scales(f1, f2)
    gr = limit_L0_GR(f1, f2)
    e = _limit_E_value(p, f1.T, f2.T, p.S + 2.0 * sigma * sigma)
    return PropagatorValue(
        value=2.0 * gr.value - e, kind=BiDistKind.SYMMETRIC, overflow=gr.overflow
    )


def limit_L0_GF(f1: GaussianSmearing, f2: GaussianSmearing) -> PropagatorValue:
    h = limit_L0_H(f1, f2)
    d = limit_L0_Delta(f1, f2)
    val = 0.5 * h.value + 0.5j * d.value
    return PropagatorValue(
        value=val, kind=BiDistKind.FEYNMAN, overflow=h.overflow or d.overflow
    )


# ---------------------------------------------------------------------------
# dispatch

_GENERAL = {
    BiDistKind.WIGHTMAN: general_W,
    BiDistKind.HADAMARD: general_H,
    BiDistKind.CAUSAL: general_E,
    BiDistKind.RETARDED: general_GR,
    BiDistKind.ADVANCED: general_GA,
    BiDistKind.SYMMETRIC: general_Delta,
    BiDistKind.FEYNMAN: general_GF,
}

_LIMIT = {
    BiDistKind.WIGHTMAN: limit_L0_W,
    BiDistKind.HADAMARD: limit_L0_H,
    BiDistKind.CAUSAL: limit_L0_E,
    BiDistKind.RETARDED: limit_L0_GR,
    BiDistKind.ADVANCED: limit_L0_GA,
    BiDistKind.SYMMETRIC: limit_L0_Delta,
    BiDistKind.FEYNMAN: limit_L0_GF,
}


def evaluate(
    kind: BiDistKind | str, f1: GaussianSmearing, f2: GaussianSmearing
) -> PropagatorValue:
    """Evaluate one bi-distribution, picking the coincidence-limit form
    automatically when the spatial centers agree."""
    geo = pair_geometry(f1, f2)
    table = _LIMIT if geo.sep == 0.0 else _GENERAL
    return table[BiDistKind(kind)](f1, f2)


# ---------------------------------------------------------------------------
# momentum-sector two-points via analytic frequency derivatives
#
# The canonical-momentum smearing differs from the field smearing by the
# operator (-i/T^2) d/dOmega - (t0/T^2 + i Omega) acting on the W value;
# V_pm = exp(i phi) exp(-M) w(-zeta_pm) obeys
#   dV/dOmega1 = (i t1 - Omega1 T1^2) V - (i T1^2 / (sqrt2 Sigma)) (2 zeta V + Gfac)
# with Gfac = (2i/sqrt(pi)) exp(i phi - M).

_MOMENTUM_WHICH = ("phi_phi", "pi_phi", "phi_pi", "pi_pi")


def _w_and_derivs(f1: GaussianSmearing, f2: GaussianSmearing):
    p = _scales(f1, f2)
    _require_sep(p, "momentum_twopoint")
    Sigma = math.sqrt(p.Sigma2)
    C = f1.T * f2.T / (2.0 * math.sqrt(_TWO_PI) * p.sep * Sigma)
    zp = (p.u + p.sep) / (_SQRT2 * Sigma)
    zm = (p.u - p.sep) / (_SQRT2 * Sigma)
    ph = cmath.exp(1j * p.phi)
    Vp = ph * wexp(p.M, -zp)
    Vm = ph * wexp(p.M, -zm)
    # w'(z) = -2 z w(z) + 2i/sqrt(pi); the constant piece cancels in V+ - V-
    # for first derivatives but survives in the mixed one via d(Zd)/dOmega2
    Gfac = (2j / _SQRT_PI) * ph * cmath.exp(-p.M)
    Vd = Vp - Vm
    Zd = zp * Vp - zm * Vm
    Z2d = zp * zp * Vp - zm * zm * Vm
    k1 = 1j * f1.t0 - f1.Omega * f1.T**2
    k2 = 1j * f2.t0 - f2.Omega * f2.T**2
    q1 = 1j * f1.T**2 / (_SQRT2 * Sigma)
    q2 = 1j * f2.T**2 / (_SQRT2 * Sigma)
    W = 0.5j * C * Vd
    dW1 = 0.5j * C * (k1 * Vd - 2.0 * q1 * Zd)
    dW2 = 0.5j * C * (k2 * Vd + 2.0 * q2 * Zd)
    dZd_2 = -q2 * Vd + k2 * Zd + 2.0 * q2 * Z2d + q2 * (zp - zm) * Gfac
    d2W = 0.5j * C * (k1 * (k2 * Vd + 2.0 * q2 * Zd) - 2.0 * q1 * dZd_2)
    return p, W, dW1, dW2, d2W


def momentum_twopoint(
    f1: GaussianSmearing,
    f2: GaussianSmearing,
    which: str = "pi_pi",
) -> PropagatorValue:
    """Two-point values with the canonical momentum smeared on either slot.

    which: "phi_phi" (plain W), "pi_phi", "phi_pi" or "pi_pi".
    """
    if which not in _MOMENTUM_WHICH:
        raise ValueError(f"which must be one of {_MOMENTUM_WHICH}, got {which!r}")
    p, W, dW1, dW2, d2W = _w_and_derivs(f1, f2)
    c1 = f1.t0 / f1.T**2 + 1j * f1.Omega
    c2 = f2.t0 / f2.T**2 + 1j * f2.Omega
    if which == "phi_phi":
        val = W
    elif which == "pi_phi":
        val = -1j / f1.T**2 * dW1 - c1 * W
    elif which == "phi_pi":
        val = -1j / f2.T**2 * dW2 - c2 * W
    else:
        val = (
            -d2W / (f1.T**2 * f2.T**2)
            + 1j * c2 / f1.T**2 * dW1
            + 1j * c1 / f2.T**2 * dW2
            + c1 * c2 * W
        )
    return _pv(val, BiDistKind.WIGHTMAN)


def momentum_twopoint_fd(
    f1: GaussianSmearing,
    f2: GaussianSmearing,
    which: str = "pi_pi",
    rel_step: float = 1e-5,
) -> PropagatorValue:
    """Central-difference cross-check of momentum_twopoint.

    First derivatives are differenced from plain W evaluations.  The mixed
    derivative is differenced from the analytic first derivative instead of
    double-differencing W: a double difference at the pinned step is
    roundoff-limited near 1e-6, while two staged first differences stay
    near 1e-11, and the staging loses no coverage because the analytic
    first derivative is itself checked against differenced W.
    """
    if which not in _MOMENTUM_WHICH:
        raise ValueError(f"which must be one of {_MOMENTUM_WHICH}, got {which!r}")
    h1 = rel_step * max(1.0, 1.0 / f1.T**2)
    h2 = rel_step * max(1.0, 1.0 / f2.T**2)

    def w_at(dO1: float, dO2: float) -> complex:
        return general_W(
            f1.shifted(Omega=f1.Omega + dO1), f2.shifted(Omega=f2.Omega + dO2)
        ).value

    W = w_at(0.0, 0.0)
    c1 = f1.t0 / f1.T**2 + 1j * f1.Omega
    c2 = f2.t0 / f2.T**2 + 1j * f2.Omega
    if which == "phi_phi":
        val = W
    elif which == "pi_phi":
        d1 = (w_at(h1, 0.0) - w_at(-h1, 0.0)) / (2.0 * h1)
        val = -1j / f1.T**2 * d1 - c1 * W
    elif which == "phi_pi":
        d2 = (w_at(0.0, h2) - w_at(0.0, -h2)) / (2.0 * h2)
        val = -1j / f2.T**2 * d2 - c2 * W
    else:
        d1 = (w_at(h1, 0.0) - w_at(-h1, 0.0)) / (2.0 * h1)
        d2 = (w_at(0.0, h2) - w_at(0.0, -h2)) / (2.0 * h2)

        def dw1_at(dO2: float) -> complex:
            return _w_and_derivs(f1, f2.shifted(Omega=f2.Omega + dO2))[2]

        d12 = (dw1_at(h2) - dw1_at(-h2)) / (2.0 * h2)
        val = (
            -d12 / (f1.T**2 * f2.T**2)
            + 1j * c2 / f1.T**2 * d1
            + 1j * c1 / f2.T**2 * d2
            + c1 * c2 * W
        )
    return _pv(val, BiDistKind.WIGHTMAN)
