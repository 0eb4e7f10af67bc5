"""Perturbative detector-pair physics at second order in the coupling.

Both detectors carry the same gap, duration and width; detector A sits
at the spacetime origin and detector B is displaced by (dt, sep, 0, 0).
The frequency-shifted smearing carries exp(+i Omega t) for the "+"
branch, so the local noise term is W(minus-shift, plus-shift) on one
detector and the nonlocal term is the time-ordered value on the
plus/plus pair.

Every closed form here is written against the scaled error functions:
Gaussian-times-erfi pairs collapse into scaled_erfi and the growing
erfc factors into erfcx, so nothing overflows at large gap or long
separation.
"""
from __future__ import annotations

import cmath
import dataclasses
import math
import warnings

import numpy as np

from .model import DetectorParams, GaussianSmearing
from .propagators import evaluate
from .qmat import (
    Basis,
    QubitOperator,
    TwoQubitState,
    eig_hermitian,
    negativity,
    partial_transpose_B,
)
from .specfun import erfcx, scaled_erfi

__all__ = [
    "HarvestingSetup",
    "HarvestingResult",
    "SingleDetectorFinal",
    "excitation_probability",
    "single_detector_ground_final",
    "G_AB_closed",
    "negativity_closed",
    "harvesting_state",
    "signalling_half_delta",
    "asymptotic_GF_largeL",
    "asymptotic_negativity_optimal_gap",
    "asymptotic_negativity_largeT",
    "Fig1Row",
    "fig1_sweep",
]

_SQRT_PI = math.sqrt(math.pi)

PERTURBATIVE_P_LIMIT = 0.1


@dataclasses.dataclass(frozen=True)
class HarvestingSetup:
    """Common parameters of an identical detector pair.

    sep is the spatial center distance |L| (> 0: the closed nonlocal
    form divides by it), dt the time-center shift of detector B.
    """

    lam: float
    Omega: float
    T: float
    sigma: float
    sep: float
    dt: float = 0.0

    def __post_init__(self) -> None:
        if not (self.T > 0.0 and math.isfinite(self.T)):
            raise ValueError("T must be positive and finite")
        if not (self.sigma >= 0.0 and math.isfinite(self.sigma)):
            raise ValueError("sigma must be nonnegative and finite")
        if not (self.lam >= 0.0 and math.isfinite(self.lam)):
            raise ValueError("lam must be nonnegative and finite")
        if not (self.sep > 0.0 and math.isfinite(self.sep)):
            raise ValueError("sep must be positive and finite")
        if not math.isfinite(self.dt):
            raise ValueError("dt must be finite")
        if not math.isfinite(self.Omega):
            raise ValueError("Omega must be finite")

    @property
    def alpha(self) -> float:
        return math.sqrt(1.0 + (self.sigma / self.T) ** 2)

    def smearing_a(self, shift: int) -> GaussianSmearing:
        return GaussianSmearing(
            T=self.T,
            t0=0.0,
            Omega=shift * self.Omega,
            sigma=self.sigma,
            L=(0.0, 0.0, 0.0),
        )

    def smearing_b(self, shift: int) -> GaussianSmearing:
        return GaussianSmearing(
            T=self.T,
            t0=self.dt,
            Omega=shift * self.Omega,
            sigma=self.sigma,
            L=(self.sep, 0.0, 0.0),
        )


@dataclasses.dataclass(frozen=True)
class SingleDetectorFinal:
    state: QubitOperator
    p_e: float


@dataclasses.dataclass(frozen=True)
class HarvestingResult:
    """Assembled pair state and the scalars that feed it.

    All scalar fields carry the coupling squared, matching the matrix
    entries. neg is the closed-form negativity; neg_eig diagonalizes
    the inner block of the partial transpose (the order-lambda^2
    entanglement content) and is the gate partner of neg; neg_full is
    the full-spectrum partial-transpose negativity, which picks up an
    O(lambda^4) contribution from the corner block.
    """

    setup: HarvestingSetup
    L_term: float
    W_AB: complex
    G_AB: complex
    Delta_half: float
    rho: TwoQubitState
    neg: float
    neg_eig: float
    neg_full: float


def excitation_probability(d: DetectorParams) -> float:
    """Leading-order probability that a ground-state detector ends up
    excited: (lam^2/4 pi alpha^2) e^{-O^2T^2} (1 - sqrt(pi) w erfcx(w))
    with w = Omega T / alpha. Negative gaps take the reflected erfc
    branch; every exponent stays nonpositive.
    """
    T, sig, Om = d.smearing.T, d.smearing.sigma, d.smearing.Omega
    al = math.sqrt(1.0 + (sig / T) ** 2)
    w = Om * T / al
    aw = abs(w)
    pref = d.lam * d.lam / (4.0 * math.pi * al * al)
    gauss = math.exp(-((Om * T) ** 2))
    core = gauss * (1.0 - _SQRT_PI * aw * erfcx(aw))
    if w >= 0.0:
        return pref * core
    return pref * (core + 2.0 * _SQRT_PI * aw * math.exp(w * w - (Om * T) ** 2))


def single_detector_ground_final(d: DetectorParams) -> SingleDetectorFinal:
    """Final state diag(1-p, p) of one ground-state detector; trustworthy
    only while p stays perturbatively small."""
    p = excitation_probability(d)
    if p > PERTURBATIVE_P_LIMIT:
        warnings.warn(
            f"excitation probability {p:.3g} exceeds the perturbative regime",
            stacklevel=2,
        )
    state = QubitOperator(np.array([[1.0 - p, 0.0], [0.0, p]]))
    return SingleDetectorFinal(state=state, p_e=p)


def G_AB_closed(s: HarvestingSetup) -> complex:
    """Closed form of the coupling-weighted time-ordered pair value.

    Each Gaussian-times-erfi product shares one argument and collapses
    into scaled_erfi; the erf factors are bounded, so the whole
    expression is overflow-free for any gap and separation.
    """
    T, sig, L, t0 = s.T, s.sigma, s.sep, s.dt
    S2 = T * T + sig * sig
    rS2 = math.sqrt(S2)
    xp = (L + t0) / (2.0 * rS2)
    xm = (L - t0) / (2.0 * rS2)
    re_part = (scaled_erfi(xp, xp * xp) + scaled_erfi(xm, xm * xm)).real
    if sig == 0.0:
        ep = em = 1.0
    else:
        den = 2.0 * T * sig * rS2
        ep = math.erf((L * T * T - t0 * sig * sig) / den)
        em = math.erf((L * T * T + t0 * sig * sig) / den)
    im_part = math.exp(-xp * xp) * ep + math.exp(-xm * xm) * em
    pref = (
        s.lam * s.lam * T * T
        / (8.0 * _SQRT_PI * L * rS2)
        * cmath.exp(complex(-((s.Omega * T) ** 2), s.Omega * t0))
    )
    return pref * complex(re_part, -im_part)


def _local_noise(s: HarvestingSetup) -> float:
    d = DetectorParams(lam=s.lam, smearing=s.smearing_a(+1))
    return excitation_probability(d)


def negativity_closed(s: HarvestingSetup) -> float:
    """max(0, |nonlocal term| - local noise), valid at any time shift."""
    return max(0.0, abs(G_AB_closed(s)) - _local_noise(s))


def harvesting_state(s: HarvestingSetup) -> HarvestingResult:
    """Assemble the final pair state and every derived quantity.

    The matrix lives in the energy product basis (gg, ge, eg, ee): the
    populated corner is the time-ordered term, the inner block carries
    the local noise on its diagonal and the minus/plus cross term off
    it, and the remaining entries vanish at this order.
    """
    lam2 = s.lam * s.lam
    L_term = _local_noise(s)
    if L_term > PERTURBATIVE_P_LIMIT:
        warnings.warn(
            f"local noise term {L_term:.3g} exceeds the perturbative regime",
            stacklevel=2,
        )
    W_AB = lam2 * evaluate("wightman", s.smearing_a(-1), s.smearing_b(+1)).value
    G_AB = G_AB_closed(s)
    Delta_half = 0.5 * lam2 * abs(
        evaluate("symmetric", s.smearing_a(+1), s.smearing_b(+1)).value
    )

    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = 1.0 - 2.0 * L_term
    m[1, 1] = L_term
    m[2, 2] = L_term
    m[1, 2] = W_AB
    m[2, 1] = W_AB.conjugate()
    m[3, 0] = -G_AB
    m[0, 3] = -G_AB.conjugate()
    rho = TwoQubitState(m=m, basis=Basis.ENERGY)
    rho.assert_positive(psd_tol=10.0 * lam2 * lam2 + 1e-12)

    neg = max(0.0, abs(G_AB) - L_term)
    pt = partial_transpose_B(rho)
    w_block, _ = eig_hermitian(pt.m[1:3, 1:3])
    neg_eig = float(-np.sum(w_block[w_block < 0.0]))
    neg_full = negativity(rho)
    return HarvestingResult(
        setup=s,
        L_term=L_term,
        W_AB=W_AB,
        G_AB=G_AB,
        Delta_half=Delta_half,
        rho=rho,
        neg=neg,
        neg_eig=neg_eig,
        neg_full=neg_full,
    )


def signalling_half_delta(s: HarvestingSetup) -> float:
    """Coupling-weighted half modulus of the symmetric value on the
    plus/plus pair: the signalling estimator.

    At dt = 0 this is the printed closed form; any other time shift
    falls back to the general closed-form propagator (which needs
    sigma > 0).
    """
    lam2 = s.lam * s.lam
    if s.dt != 0.0:
        return 0.5 * lam2 * abs(
            evaluate("symmetric", s.smearing_a(+1), s.smearing_b(+1)).value
        )
    if s.sigma == 0.0:
        raise ValueError(
            "signalling_half_delta needs sigma > 0; the erf argument diverges"
        )
    al = s.alpha
    x = s.sep / (2.0 * al * s.T)
    if s.sigma < 1e-8 * s.sep:
        warnings.warn(
            "erf factor saturated to 1 (sigma far below sep)", stacklevel=2
        )
        ef = 1.0
    else:
        ef = math.erf(s.sep / (2.0 * al * s.sigma))
    return (
        lam2
        * math.exp(-((s.Omega * s.T) ** 2) - x * x)
        / (4.0 * al * _SQRT_PI)
        * (s.T / s.sep)
        * ef
    )


def asymptotic_GF_largeL(s: HarvestingSetup) -> float:
    """Two-term large-separation expansion of |nonlocal term|."""
    L2 = s.sep * s.sep
    T2 = s.T * s.T
    return (
        s.lam * s.lam * math.exp(-((s.Omega * s.T) ** 2)) / (2.0 * math.pi)
        * (T2 / L2 + 2.0 * T2 * (T2 + s.sigma * s.sigma) / (L2 * L2))
    )


def asymptotic_negativity_optimal_gap(ell: float, lam: float) -> float:
    """Peak negativity at the gap that tracks the separation, to leading
    order in the inverse scaled separation ell = sep/T."""
    return 4.0 * lam * lam / math.pi * math.exp(-ell * ell / 4.0) / ell ** 4


def asymptotic_negativity_largeT(s: HarvestingSetup) -> float:
    """Leading negativity for interaction times far beyond the light
    crossing time; the signalling term dominates here."""
    x = s.sep / (2.0 * s.T)
    ef = 1.0 if s.sigma == 0.0 else math.erf(s.sep / (2.0 * s.sigma))
    return (
        s.lam * s.lam
        * math.exp(-((s.Omega * s.T) ** 2) - x * x)
        / (4.0 * _SQRT_PI)
        * (s.T / s.sep)
        * ef
    )


@dataclasses.dataclass(frozen=True)
class Fig1Row:
    OmegaT: float
    negativity_over_lambda2: float
    half_delta_over_lambda2: float


def fig1_sweep(omega_grid: list[float], base: HarvestingSetup) -> list[Fig1Row]:
    """Gap sweep of the coupling-scaled negativity and signalling.

    Both columns divide out lam^2 (they are exact lam^2 multiples), so
    the rows do not depend on base.lam.
    """
    rows = []
    for om in omega_grid:
        s = dataclasses.replace(base, Omega=float(om), lam=1.0)
        rows.append(
            Fig1Row(
                OmegaT=float(om) * base.T,
                negativity_over_lambda2=negativity_closed(s),
                half_delta_over_lambda2=signalling_half_delta(s),
            )
        )
    return rows
