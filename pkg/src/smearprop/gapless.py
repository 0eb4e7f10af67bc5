"""Exact final states for zero-gap detectors.

With the internal frequency set to zero the coupling operator of each
detector is constant in the interaction picture, so commutators of the
interaction Hamiltonian at different times are c-numbers and the Magnus
exponent terminates after its second term.  The reduced detector states
then follow exactly, at any coupling strength, from smeared two-point
data of the field:

  * one detector: the mixing channel
        rho -> e^{-xi} cosh(xi) rho + e^{-xi} sinh(xi) mu rho mu
    with xi = lam^2 W(f, f) and involutive coupling operator mu;

  * two detectors: an element-wise damping/phase map in the product
    eigenbasis of the two coupling operators (qmat.Basis.MONOPOLE,
    index order ++, +-, -+, --), with factors built from the self
    Wightman values, the cross Hadamard/commutator values and the
    time-symmetric combination (G_R + G_A) of the cross pair.

All two-point numbers carried by GaplessPairData are coupling-weighted,
lam_a lam_b B(f_a, f_b) for each kind B; with real (Omega = 0) profiles
every one of them is real.  The spacetime placement of the detectors
rides on the smearings themselves (centers t0 and L), so a pair is fully
described by two DetectorParams.

Energy-tagged states are accepted everywhere and converted through the
qmat basis rotation, which hard-codes the coupling operator sigma_x; a
caller with a different involutive coupling operator should pass states
already expressed in that operator's product eigenbasis (Monopole tag).
"""

from __future__ import annotations

import cmath
import dataclasses
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .model import BiDistKind, DetectorParams, GaussianSmearing
from .propagators import PropagatorValue, evaluate
from .qmat import (
    Basis,
    P_GROUND,
    QubitOperator,
    TwoQubitState,
    basis_change,
    eig_hermitian,
    hs_norm_sq,
    partial_transpose_B,
    tensor_op,
)

_INVOLUTION_TOL = 1e-12


def _real_part(pv: PropagatorValue, what: str) -> float:
    """Real part of a closed-form value that is real by construction
    (zero-frequency smearings); overflow is refused, the imaginary
    rounding residue is dropped."""
    if pv.overflow:
        raise ValueError(f"{what} overflowed; parameters out of closed-form range")
    return float(pv.value.real)


# ---------------------------------------------------------------------------
# single detector


def single_channel(
    rho0: QubitOperator, xi: float, mu: QubitOperator
) -> QubitOperator:
    """Apply the one-detector mixing channel.

    xi >= 0 is the coupling-weighted self Wightman value lam^2 W(f, f).
    The mixture weights are written as (1 +- e^{-2 xi})/2, which keeps
    xi = 0 an exact identity and xi -> inf the even mixture.  For
    mu = sigma_x this is a bit flip with probability e^{-xi} sinh(xi).
    """
    if not (math.isfinite(xi) and xi >= 0.0):
        raise ValueError(f"xi must be finite and >= 0, got {xi!r}")
    dev = np.abs(mu.m @ mu.m - np.eye(2)).max()
    if dev > _INVOLUTION_TOL:
        raise ValueError("mu must square to the identity")
    herm = np.abs(mu.m - mu.m.conj().T).max()
    if herm > _INVOLUTION_TOL:
        raise ValueError("mu must be Hermitian")
    keep = 0.5 * (1.0 + math.exp(-2.0 * xi))
    flip = 0.5 * (1.0 - math.exp(-2.0 * xi))
    return QubitOperator(keep * rho0.m + flip * (mu.m @ rho0.m @ mu.m))


# ---------------------------------------------------------------------------
# pair data


@dataclasses.dataclass(frozen=True)
class GaplessPairData:
    """Coupling-weighted two-point numbers of one detector pair.

    W_aa, W_bb: self Wightman values (nonnegative); H_ab, E_ab: cross
    Hadamard and commutator values; Delta_ab: cross (G_R + G_A); G_a,
    G_b: half the self retarded values, which enter the evolution only
    as global phases once the coupling operators square to the identity
    and are kept for reporting.
    """

    W_aa: float
    W_bb: float
    H_ab: float
    E_ab: float
    Delta_ab: float
    G_a: float = 0.0
    G_b: float = 0.0

    def __post_init__(self) -> None:
        for name in ("W_aa", "W_bb", "H_ab", "E_ab", "Delta_ab", "G_a", "G_b"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
        if self.W_aa < 0.0 or self.W_bb < 0.0:
            raise ValueError("self Wightman values must be nonnegative")


def pair_data(a: DetectorParams, b: DetectorParams) -> GaplessPairData:
    """Evaluate the closed forms for one zero-gap pair.

    Both smearings must have Omega = 0.  The symmetric cross value and
    the self retarded values need sigma > 0 (their closed forms divide
    by the spatial width); that restriction propagates from the
    evaluator.
    """
    for d in (a, b):
        if d.smearing.Omega != 0.0:
            raise ValueError("zero-gap pair needs Omega = 0 in both smearings")
    fa, fb = a.smearing, b.smearing
    la2 = a.lam * a.lam
    lb2 = b.lam * b.lam
    lab = a.lam * b.lam
    return GaplessPairData(
        W_aa=la2 * _real_part(evaluate(BiDistKind.WIGHTMAN, fa, fa), "W_aa"),
        W_bb=lb2 * _real_part(evaluate(BiDistKind.WIGHTMAN, fb, fb), "W_bb"),
        H_ab=lab * _real_part(evaluate(BiDistKind.HADAMARD, fa, fb), "H_ab"),
        E_ab=lab * _real_part(evaluate(BiDistKind.CAUSAL, fa, fb), "E_ab"),
        Delta_ab=lab * _real_part(evaluate(BiDistKind.SYMMETRIC, fa, fb), "Delta_ab"),
        G_a=0.5 * la2 * _real_part(evaluate(BiDistKind.RETARDED, fa, fa), "G_a"),
        G_b=0.5 * lb2 * _real_part(evaluate(BiDistKind.RETARDED, fb, fb), "G_b"),
    )


# ---------------------------------------------------------------------------
# two-detector map

# eigenvalue pairs (mu_a, mu_b) in Monopole index order
_SIGNS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def factor_matrix(d: GaplessPairData) -> np.ndarray:
    """Element-wise factors of the two-detector map in the Monopole basis.

    Entry (j, k) multiplies rho[j, k]; with row eigenvalues (m_a, m_b)
    and column eigenvalues (n_a, n_b) the damping exponent is
    -(1/2)[(m_a-n_a)^2 W_aa + (m_b-n_b)^2 W_bb + (m_a-n_a)(m_b-n_b) H_ab]
    and the phase is
    (1/2)(n_a m_b - m_a n_b) E_ab - (1/2)(m_a m_b - n_a n_b) Delta_ab.
    The diagonal is exactly 1 and the matrix is Hermitian with unit-
    modulus-or-smaller entries, so the map preserves trace and
    Hermiticity and never amplifies a coherence.
    """
    f = np.empty((4, 4), dtype=complex)
    for j, (ma, mb) in enumerate(_SIGNS):
        for k, (na, nb) in enumerate(_SIGNS):
            da = ma - na
            db = mb - nb
            damp = da * da * d.W_aa + db * db * d.W_bb + da * db * d.H_ab
            phase = (na * mb - ma * nb) * d.E_ab - (ma * mb - na * nb) * d.Delta_ab
            f[j, k] = cmath.exp(complex(-0.5 * damp, 0.5 * phase))
    return f


def _apply_factors(rho0: TwoQubitState, f: np.ndarray) -> TwoQubitState:
    tr = float(rho0.m.trace().real)
    if abs(tr - 1.0) > 1e-12:
        raise ValueError(f"input state must have unit trace, got {tr:.17g}")
    want = rho0.basis
    work = basis_change(rho0, Basis.MONOPOLE)
    out = TwoQubitState(m=f * work.m, basis=Basis.MONOPOLE)
    return basis_change(out, want)


def two_detector_state(rho0: TwoQubitState, d: GaplessPairData) -> TwoQubitState:
    """Exact final state of the pair, in the basis the input carried.

    Diagonal entries (Monopole basis) pass through untouched, so the
    trace is preserved exactly; coherences pick up the factor_matrix
    damping and phases.
    """
    return _apply_factors(rho0, factor_matrix(d))


def unitary_only_state(rho0: TwoQubitState, delta_ab: float) -> TwoQubitState:
    """Final state under the exchange term alone.

    The two-body phase generator is diagonal in the Monopole basis, so
    this is the factor map with all damping switched off: phases
    e^{-i Delta_ab} on the single-flip coherences, nothing else.
    Purity is preserved exactly.
    """
    if not math.isfinite(delta_ab):
        raise ValueError(f"delta_ab must be finite, got {delta_ab!r}")
    d0 = GaplessPairData(W_aa=0.0, W_bb=0.0, H_ab=0.0, E_ab=0.0, Delta_ab=delta_ab)
    return _apply_factors(rho0, factor_matrix(d0))


def choi_matrix(d: GaplessPairData) -> np.ndarray:
    """16x16 process matrix of the element-wise map.

    An element-wise map sends the matrix unit |j><k| to f[j, k] |j><k|,
    so the only nonzero entries sit at (5j, 5k) and carry exactly the
    factor matrix.  The map is completely positive if and only if this
    matrix (equivalently the factor matrix) is positive semidefinite.
    """
    f = factor_matrix(d)
    c = np.zeros((16, 16), dtype=complex)
    for j in range(4):
        for k in range(4):
            c[5 * j, 5 * k] = f[j, k]
    return c


def choi_min_eigenvalue(d: GaplessPairData) -> float:
    w, _ = eig_hermitian(choi_matrix(d))
    return float(w[0])


# ---------------------------------------------------------------------------
# pair setup and distances


@dataclasses.dataclass(frozen=True)
class GaplessPairSetup:
    """Identical zero-gap pair: temporal width T, spatial width sigma,
    center distance sep, time-center shift dt of detector B."""

    lam: float
    T: float
    sigma: float
    sep: float
    dt: float = 0.0

    def __post_init__(self) -> None:
        if not (self.lam >= 0.0 and math.isfinite(self.lam)):
            raise ValueError("lam must be nonnegative and finite")
        if not (self.T > 0.0 and math.isfinite(self.T)):
            raise ValueError("T must be positive and finite")
        if not (self.sigma >= 0.0 and math.isfinite(self.sigma)):
            raise ValueError("sigma must be nonnegative and finite")
        if not (self.sep > 0.0 and math.isfinite(self.sep)):
            raise ValueError("sep must be positive and finite")
        if not math.isfinite(self.dt):
            raise ValueError("dt must be finite")

    def detector_a(self) -> DetectorParams:
        return DetectorParams(
            lam=self.lam,
            smearing=GaussianSmearing(T=self.T, t0=0.0, Omega=0.0, sigma=self.sigma),
        )

    def detector_b(self) -> DetectorParams:
        return DetectorParams(
            lam=self.lam,
            smearing=GaussianSmearing(
                T=self.T, t0=self.dt, Omega=0.0, sigma=self.sigma,
                L=(self.sep, 0.0, 0.0),
            ),
        )

    def data(self) -> GaplessPairData:
        return pair_data(self.detector_a(), self.detector_b())


def ground_ground(basis: Basis = Basis.MONOPOLE) -> TwoQubitState:
    """Both detectors in the energy ground state, tagged as requested.

    Both representations are written down directly (the Monopole one is
    the flat quarter matrix), keeping the trace exactly 1 either way
    instead of routing through the rotation and its rounding.
    """
    if basis is Basis.MONOPOLE:
        return TwoQubitState(m=np.full((4, 4), 0.25), basis=Basis.MONOPOLE)
    return TwoQubitState(m=tensor_op(P_GROUND, P_GROUND), basis=Basis.ENERGY)


def hs_distance_sq(s: GaplessPairSetup) -> float:
    """Squared Hilbert-Schmidt distance between the exact final state
    and the exchange-only state, both grown from the ground pair."""
    d = s.data()
    rho0 = ground_ground(Basis.MONOPOLE)
    full = two_detector_state(rho0, d)
    unit = unitary_only_state(rho0, d.Delta_ab)
    return hs_norm_sq(full, unit)


def hs_limit_largeT(lam: float) -> float:
    """Long-interaction limit of hs_distance_sq for the ground pair.

    In that regime the cross Hadamard value approaches twice the self
    Wightman value lam^2/(4 pi), the commutator value integrates away,
    and the distance depends on the coupling alone:
    (1/8)(5 + e^{-4g} - 2 e^{-2g} + 4 e^{-g} - 8 e^{-g/2}), g = lam^2/pi.
    """
    g = lam * lam / math.pi
    return 0.125 * (
        5.0
        + math.exp(-4.0 * g)
        - 2.0 * math.exp(-2.0 * g)
        + 4.0 * math.exp(-g)
        - 8.0 * math.exp(-0.5 * g)
    )


def hs_limit_smalllam(lam: float) -> float:
    """Leading small-coupling behaviour of hs_limit_largeT."""
    return 0.625 * lam**4 / (math.pi * math.pi)


# ---------------------------------------------------------------------------
# causal-order reduction


@dataclasses.dataclass(frozen=True)
class CausalOrderReport:
    """Two executable facts about signalling order.

    retarded_leak: |retarded cross value| when detector A sits far in
    the past of B, against leak_scale = |commutator cross value| there;
    the closed form must make the leak vanish (B cannot reach back).
    spacelike_min_pt: worst minimum partial-transpose eigenvalue of the
    exact ground-pair final state over short interactions (T <= 0.3 sep)
    and the listed couplings; no entanglement can form without causal
    contact, so it must not dip below rounding.
    """

    retarded_leak: float
    leak_scale: float
    spacelike_min_pt: float
    lams: tuple[float, ...]

    @property
    def retarded_ok(self) -> bool:
        return self.retarded_leak <= 1e-10 * self.leak_scale

    @property
    def spacelike_ok(self) -> bool:
        return self.spacelike_min_pt >= -1e-12


def causal_order_reduction_check(
    sep: float = 1.0,
    lams: tuple[float, ...] = (0.5, 1.0, 2.0),
    t_over_sep: tuple[float, ...] = (0.1, 0.2, 0.3),
    sigma_over_sep: float = 0.05,
) -> CausalOrderReport:
    fa = GaussianSmearing(T=0.1 * sep, t0=0.0, sigma=0.1 * sep)
    fb = GaussianSmearing(
        T=0.1 * sep, t0=2.0 * sep, sigma=0.1 * sep, L=(sep, 0.0, 0.0)
    )
    leak = abs(evaluate(BiDistKind.RETARDED, fa, fb).value)
    scale = abs(evaluate(BiDistKind.CAUSAL, fa, fb).value)

    rho0 = ground_ground(Basis.MONOPOLE)
    worst = math.inf
    for lam in lams:
        for t in t_over_sep:
            s = GaplessPairSetup(
                lam=lam, T=t * sep, sigma=sigma_over_sep * sep, sep=sep
            )
            pt = partial_transpose_B(two_detector_state(rho0, s.data()))
            w, _ = eig_hermitian(pt.m)
            worst = min(worst, float(w[0]))
    return CausalOrderReport(
        retarded_leak=leak,
        leak_scale=scale,
        spacelike_min_pt=worst,
        lams=tuple(lams),
    )


# ---------------------------------------------------------------------------
# sweeps


@dataclasses.dataclass(frozen=True)
class Fig3Row:
    """Partial-transpose spectra (ascending) of the exact and the
    exchange-only ground-pair states at one interaction duration."""

    T_over_L: float
    ev_full: tuple[float, float, float, float]
    ev_unitary: tuple[float, float, float, float]


def fig3_point(lam: float, t_over_l: float, sigma_over_l: float = 0.05) -> Fig3Row:
    s = GaplessPairSetup(lam=lam, T=t_over_l, sigma=sigma_over_l, sep=1.0)
    d = s.data()
    rho0 = ground_ground(Basis.MONOPOLE)
    full = partial_transpose_B(two_detector_state(rho0, d))
    unit = partial_transpose_B(unitary_only_state(rho0, d.Delta_ab))
    wf, _ = eig_hermitian(full.m)
    wu, _ = eig_hermitian(unit.m)
    return Fig3Row(
        T_over_L=float(t_over_l),
        ev_full=tuple(float(x) for x in wf),
        ev_unitary=tuple(float(x) for x in wu),
    )


def fig3_sweep(
    lam: float,
    t_grid: list[float],
    sigma_over_l: float = 0.05,
    jobs: int = 1,
) -> list[Fig3Row]:
    if jobs <= 1:
        return [fig3_point(lam, t, sigma_over_l) for t in t_grid]
    with ThreadPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(lambda t: fig3_point(lam, t, sigma_over_l), t_grid))


def entanglement_onset(
    lam: float,
    sigma_over_l: float = 0.05,
    bracket: tuple[float, float] = (0.3, 1.5),
    tol: float = 1e-4,
) -> float:
    """Duration (in units of the separation) where the ground pair first
    develops a negative partial-transpose eigenvalue, by bisection."""

    def min_pt(t: float) -> float:
        return fig3_point(lam, t, sigma_over_l).ev_full[0]

    lo, hi = bracket
    flo, fhi = min_pt(lo), min_pt(hi)
    if not (flo > 0.0 > fhi):
        raise ValueError(
            f"bracket does not straddle the onset: f({lo}) = {flo:.3e}, "
            f"f({hi}) = {fhi:.3e}"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if min_pt(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclasses.dataclass(frozen=True)
class Fig4Row:
    """Squared distance between exact and exchange-only evolution at one
    duration, for each coupling, with the long-interaction plateau."""

    T_over_L: float
    hs_sq: tuple[float, ...]
    hs_limit: tuple[float, ...]


def fig4_point(
    lams: tuple[float, ...], t_over_l: float, sigma_over_l: float = 0.01
) -> Fig4Row:
    vals = tuple(
        hs_distance_sq(
            GaplessPairSetup(lam=lam, T=t_over_l, sigma=sigma_over_l, sep=1.0)
        )
        for lam in lams
    )
    return Fig4Row(
        T_over_L=float(t_over_l),
        hs_sq=vals,
        hs_limit=tuple(hs_limit_largeT(lam) for lam in lams),
    )


def fig4_sweep(
    lams: tuple[float, ...],
    t_grid: list[float],
    sigma_over_l: float = 0.01,
    jobs: int = 1,
) -> list[Fig4Row]:
    if jobs <= 1:
        return [fig4_point(lams, t, sigma_over_l) for t in t_grid]
    with ThreadPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(lambda t: fig4_point(lams, t, sigma_over_l), t_grid))
