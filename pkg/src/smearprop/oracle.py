"""Quadrature oracles: independent integral-representation evaluations used
to certify every closed form in :mod:`smearprop.propagators`.

Each oracle integrates a manifestly bounded integrand (all large exponents
are combined before exponentiation) with adaptive Gauss-Kronrod quadrature
on a truncated interval.  Truncation keeps the neglected envelope below
``envelope_cut`` (default 1e-18) of its peak; the adaptive stage then works
to an absolute tolerance of 1e-14 x (integrand peak x interval).  Gating
comparisons elsewhere use max(requested_tol, 10 x abs_error_estimate).

A second, deliberately different scheme (composite trapezoid with Richardson
extrapolation) is provided for the radial Wightman integral so the primary
scheme itself can be spot-checked.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .model import DetectorParams, GaussianSmearing, pair_geometry
from .specfun import dawson, exp_erfc, scaled_erfi

_TWO_PI = 2.0 * math.pi
_SQRT2 = math.sqrt(2.0)
_SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    abs_error_estimate: float
    evaluations: int

    def __post_init__(self) -> None:
        if self.abs_error_estimate < 0.0:
            raise ValueError("abs_error_estimate must be >= 0")
        if self.evaluations <= 0:
            raise ValueError("evaluations must be > 0")


class OracleConvergenceError(RuntimeError):
    """Raised when the adaptive quadrature cannot reach its error budget."""


def _cut_reach(envelope_cut: float) -> float:
    # half-width multiplier c with exp(-c^2/2) = envelope_cut
    if not 0.0 < envelope_cut < 1.0:
        raise ValueError("envelope_cut must be in (0, 1)")
    return math.sqrt(2.0 * math.log(1.0 / envelope_cut))


def _quad_piece(f, a: float, b: float, epsabs: float, limit: int,
                points=None):
    """Gauss-Kronrod on the real and imaginary parts of a complex integrand.

    `points` flags interior locations the adaptive rule must sample
    (narrow peaks far from the interval ends are invisible to the
    initial panel otherwise)."""
    brk = None
    if points is not None:
        brk = sorted({p for p in points if a < p < b})
        if not brk:
            brk = None
    out = 0.0 + 0.0j
    err = 0.0
    neval = 0
    failed = False
    for part in (0, 1):
        res = quad(
            lambda k, p=part: (f(k).real if p == 0 else f(k).imag),
            a, b, epsabs=epsabs, epsrel=1e-12, limit=limit, full_output=1,
            points=brk,
        )
        val, aerr, info = res[0], res[1], res[2]
        if len(res) > 3:
            failed = True
        out += val if part == 0 else 1j * val
        err += aerr
        neval += int(info["neval"])
    return out, err, neval, failed


def _quad_split(f, a: float, b: float, nodes, epsabs: float, limit: int):
    """Integrate piecewise between oscillation nodes, summing adjacent pieces
    pairwise to limit cancellation between half-waves."""
    edges = [a] + [x for x in nodes if a < x < b] + [b]
    pieces = []
    err = 0.0
    neval = 0
    failed = False
    piece_eps = epsabs / max(1, len(edges) - 1)
    for lo, hi in zip(edges[:-1], edges[1:]):
        v, e, n, bad = _quad_piece(f, lo, hi, piece_eps, limit)
        pieces.append(v)
        err += e
        neval += n
        failed = failed or bad
    while len(pieces) > 1:
        nxt = [pieces[i] + pieces[i + 1] for i in range(0, len(pieces) - 1, 2)]
        if len(pieces) % 2:
            nxt[-1] += pieces[-1]
        pieces = nxt
    return pieces[0], err, neval, failed


def _finish(pref: complex, integral: complex, err: float, neval: int,
            failed: bool) -> QuadratureResult:
    scale = abs(pref)
    result = QuadratureResult(
        value=pref * integral,
        abs_error_estimate=scale * err,
        evaluations=neval,
    )
    if failed:
        raise OracleConvergenceError(
            f"quadrature did not converge (error estimate {scale * err:.3e} "
            f"after subdivision budget); value so far {result.value!r}"
        )
    return result


# ---------------------------------------------------------------------------
# radial momentum-space Wightman integral

def quad_W_momentum(
    f1: GaussianSmearing,
    f2: GaussianSmearing,
    envelope_cut: float = 1e-18,
    limit: int = 200,
) -> QuadratureResult:
    """Radial momentum integral for the smeared Wightman value.

    Integrand (with every exponent combined): for sep > 0

        sin(k sep) exp(-M - Sigma^2 k^2 / 2 + k D - i k dt)

    and k replaces sin(k sep)/sep at sep = 0.  The exponent is bounded above
    by 0 on the whole ray (Cauchy-Schwarz: D^2 <= 2 M Sigma^2).
    """
    geo = pair_geometry(f1, f2)
    S2 = f1.T**2 + f2.T**2 + f1.sigma**2 + f2.sigma**2
    Sigma = math.sqrt(S2)
    M = 0.5 * (f1.Omega**2 * f1.T**2 + f2.Omega**2 * f2.T**2)
    D = f1.Omega * f1.T**2 - f2.Omega * f2.T**2
    phi = f1.Omega * f1.t0 + f2.Omega * f2.t0
    dt = geo.dt
    sep = geo.sep

    kstar = max(0.0, D / S2)
    kmax = kstar + _cut_reach(envelope_cut) / Sigma
    peak = math.exp(-M + (D * D / (2.0 * S2) if D > 0.0 else 0.0))

    if sep == 0.0:
        def f(k: float) -> complex:
            return k * cmath.exp(complex(-M - 0.5 * S2 * k * k + D * k, -k * dt))
        amp_peak = peak * kmax
    else:
        def f(k: float) -> complex:
            return math.sin(k * sep) * cmath.exp(
                complex(-M - 0.5 * S2 * k * k + D * k, -k * dt)
            )
        amp_peak = peak

    epsabs = max(1e-300, 1e-14 * amp_peak * kmax)
    pref = f1.T * f2.T * cmath.exp(1j * phi) / (_TWO_PI * (sep if sep > 0.0 else 1.0))

    if sep > 0.0 and sep * kmax > 1e3:
        n_nodes = int(sep * kmax / math.pi)
        nodes = [i * math.pi / sep for i in range(1, n_nodes + 1)]
        integral, err, neval, failed = _quad_split(f, 0.0, kmax, nodes, epsabs, limit)
    else:
        integral, err, neval, failed = _quad_piece(f, 0.0, kmax, epsabs, limit)
    return _finish(pref, integral, err, neval, failed)


def quad_W_momentum_trapezoid(
    f1: GaussianSmearing,
    f2: GaussianSmearing,
    envelope_cut: float = 1e-18,
    target_rel: float = 1e-11,
    max_doublings: int = 16,
) -> QuadratureResult:
    """Second scheme for the same radial integral: composite trapezoid with
    Richardson extrapolation (Romberg table), vectorized over the grid."""
    geo = pair_geometry(f1, f2)
    S2 = f1.T**2 + f2.T**2 + f1.sigma**2 + f2.sigma**2
    Sigma = math.sqrt(S2)
    M = 0.5 * (f1.Omega**2 * f1.T**2 + f2.Omega**2 * f2.T**2)
    D = f1.Omega * f1.T**2 - f2.Omega * f2.T**2
    phi = f1.Omega * f1.t0 + f2.Omega * f2.t0
    sep, dt = geo.sep, geo.dt

    kstar = max(0.0, D / S2)
    b = kstar + _cut_reach(envelope_cut) / Sigma

    def fv(k: np.ndarray) -> np.ndarray:
        ex = np.exp(-M - 0.5 * S2 * k * k + D * k - 1j * k * dt)
        return (np.sin(k * sep) if sep > 0.0 else k) * ex

    pref = f1.T * f2.T * cmath.exp(1j * phi) / (_TWO_PI * (sep if sep > 0.0 else 1.0))

    n = 64
    ks = np.linspace(0.0, b, n + 1)
    vals = fv(ks)
    trap = (b / n) * (vals.sum() - 0.5 * (vals[0] + vals[-1]))
    rows = [[trap]]
    neval = n + 1
    delta = math.inf
    for _ in range(max_doublings):
        n *= 2
        mids = np.linspace(0.0, b, n + 1)[1::2]
        vals_m = fv(mids)
        neval += mids.size
        trap = 0.5 * trap + (b / n) * vals_m.sum()
        row = [trap]
        prev = rows[-1]
        fac = 1.0
        for j, p in enumerate(prev):
            fac *= 4.0
            row.append(row[j] + (row[j] - p) / (fac - 1.0))
        rows.append(row)
        best, prev_best = row[-1], prev[-1]
        delta = abs(best - prev_best)
        if delta <= target_rel * abs(best) + 1e-300:
            break
    best = rows[-1][-1]
    return QuadratureResult(
        value=pref * best,
        abs_error_estimate=abs(pref) * delta,
        evaluations=neval,
    )


# ---------------------------------------------------------------------------
# momentum-space time-ordered integral for a detector pair

def quad_GF_momentum(
    a: DetectorParams,
    b: DetectorParams,
    envelope_cut: float = 1e-18,
    limit: int = 200,
) -> QuadratureResult:
    """Momentum-space integral for the coupling-weighted time-ordered value
    of a detector pair (equal widths and gap on both detectors).

    The bracket pairs exp(-+ i k tau) erfc(i k T -+ tau/(2T)) terms; each is
    evaluated through one fused exponential-times-erfc product whose exponent
    is bounded, so nothing overflows at large gap or long separation.
    Returns the value scaled by lam_a * lam_b.
    """
    fa, fb = a.smearing, b.smearing
    if fa.T != fb.T:
        raise ValueError("quad_GF_momentum needs equal T on both detectors")
    if fa.sigma != fb.sigma:
        raise ValueError("quad_GF_momentum needs equal sigma on both detectors")
    if fa.Omega != fb.Omega:
        raise ValueError("quad_GF_momentum needs equal Omega on both detectors")
    if fa.sigma == 0.0:
        # the time-ordered tail decays like sin(k sep)/k without spatial
        # smearing: only conditionally convergent, not oracle material
        raise ValueError("quad_GF_momentum needs sigma > 0")
    T, sigma, Omega = fa.T, fa.sigma, fa.Omega
    geo = pair_geometry(fa, fb)
    sep, tau = geo.sep, geo.dt

    def bracket(k: float) -> complex:
        out = 0.0 + 0.0j
        for s in (-1.0, 1.0):
            c = complex(-k * k * T * T, s * k * tau)
            u = complex(s * tau / (2.0 * T), k * T)
            out += exp_erfc(c, u)
        return out

    def sinc(x: float) -> float:
        if abs(x) < 1e-8:
            return 1.0 - x * x / 6.0
        return math.sin(x) / x

    def f(k: float) -> complex:
        return k * math.exp(-k * k * sigma * sigma) * sinc(k * sep) * bracket(k)

    # the erfc pair sheds its exp(-k^2 T^2) damping at large k (the bracket
    # tail goes like 1/(k T)), so only exp(-k^2 sigma^2) cuts the integrand
    kmax = _cut_reach(envelope_cut) / (_SQRT2 * sigma)
    peak_amp = 2.0 / T + 1.0 / math.sqrt(T * T + sigma * sigma)
    epsabs = max(1e-300, 1e-14 * peak_amp * kmax)
    pref = (
        a.lam * b.lam * T * T / (4.0 * math.pi)
        * cmath.exp(complex(-Omega * Omega * T * T, Omega * (fa.t0 + fb.t0)))
    )
    if sep > 0.0 and sep * kmax > 1e3:
        n_nodes = int(sep * kmax / math.pi)
        nodes = [i * math.pi / sep for i in range(1, n_nodes + 1)]
        integral, err, neval, failed = _quad_split(f, 0.0, kmax, nodes, epsabs, limit)
    else:
        integral, err, neval, failed = _quad_piece(f, 0.0, kmax, epsabs, limit)
    return _finish(pref, integral, err, neval, failed)


# ---------------------------------------------------------------------------
# spacetime route for the retarded value

def quad_GR_spacetime(
    f1: GaussianSmearing,
    f2: GaussianSmearing,
    envelope_cut: float = 1e-18,
    limit: int = 200,
) -> QuadratureResult:
    """Spacetime-reduction route to the retarded value: analytic time
    integral first, then one radial quadrature.

    The sinh of the angular reduction is kept paired with its Gaussian
    damping as a difference of two completed-square exponentials,
    (1/2)[exp(-(v - sep/sqrt2)^2/2 sigma^2) - exp(-(v + sep/sqrt2)^2/2 sigma^2)],
    which never overflows however large sep/sigma gets.
    """
    if f1.sigma != f2.sigma:
        raise ValueError("quad_GR_spacetime needs sigma1 = sigma2")
    sigma = f1.sigma
    if sigma == 0.0:
        raise ValueError("quad_GR_spacetime needs sigma > 0")
    geo = pair_geometry(f1, f2)
    if geo.sep == 0.0:
        raise ValueError("quad_GR_spacetime needs sep > 0")
    sep, dt = geo.sep, geo.dt
    S = f1.T**2 + f2.T**2
    sqS = math.sqrt(S)
    D = f1.Omega * f1.T**2 - f2.Omega * f2.T**2
    Op = f1.Omega + f2.Omega

    c1 = sep / _SQRT2
    c2 = dt / _SQRT2
    two_s2 = 2.0 * sigma * sigma

    def f(v: float) -> complex:
        g = 0.5 * (
            math.exp(-((v - c1) ** 2) / two_s2) - math.exp(-((v + c1) ** 2) / two_s2)
        )
        return g * math.exp(-((v - c2) ** 2) / S) * cmath.exp(1j * _SQRT2 * D * v / S)

    reach = _cut_reach(envelope_cut)
    vmax = max(c1 + reach * sigma, c2 + reach * sqS / _SQRT2, sigma)
    peak = math.exp(-((c1 - c2) ** 2) / (two_s2 + S))
    epsabs = max(1e-300, 1e-14 * peak * vmax)

    pref = -(f1.T * f2.T / (_TWO_PI * sigma * sep * sqS)) * cmath.exp(
        complex(
            -Op * Op * f1.T**2 * f2.T**2 / (2.0 * S),
            Op * (f1.t0 * f2.T**2 + f2.t0 * f1.T**2) / S,
        )
    )
    # anchor the spatial spike (center c1, width sigma) and the time
    # overlap (center c2, width sqrt(S/2)); either can be far narrower
    # than the interval
    anchors = (c1 - sigma, c1, c1 + sigma,
               c2 - sqS / _SQRT2, c2, c2 + sqS / _SQRT2)
    integral, err, neval, failed = _quad_piece(
        f, 0.0, vmax, epsabs, limit, points=anchors)
    return _finish(pref, integral, err, neval, failed)


# ---------------------------------------------------------------------------
# the sine-erfi integral identity

@dataclass(frozen=True)
class IdentityCheck:
    lhs: QuadratureResult
    rhs: complex

    @property
    def rel_err(self) -> float:
        scale = max(abs(self.lhs.value), abs(self.rhs))
        if scale == 0.0:
            return 0.0
        return abs(self.lhs.value - self.rhs) / scale


def check_integral_identity(
    gamma: float,
    sigma: float,
    ell: float,
    envelope_cut: float = 1e-18,
    limit: int = 200,
) -> IdentityCheck:
    """Quadrature-vs-closed-form check of

        int_0^inf exp(-(g^2+s^2) r^2) sin(r l) erfi(g r) dr
          = (sqrt(pi)/2) exp(-l^2/(4(g^2+s^2))) / sqrt(g^2+s^2)
            * erf(l g / (2|s| sqrt(g^2+s^2)))

    for real parameters with |gamma| < |sigma| (the integral diverges
    otherwise).  The integrand uses the Dawson form
    exp(-g^2 r^2) erfi(g r) = (2/sqrt(pi)) D(g r), which is bounded.
    """
    for name, v in (("gamma", gamma), ("sigma", sigma), ("ell", ell)):
        if not math.isfinite(v):
            raise ValueError(f"{name} must be finite")
    if abs(gamma) >= abs(sigma):
        raise ValueError("identity needs |gamma| < |sigma|; integral diverges")

    two_over_rtpi = 2.0 / _SQRT_PI

    def f(r: float) -> complex:
        return complex(
            math.exp(-sigma * sigma * r * r)
            * two_over_rtpi * dawson(gamma * r) * math.sin(r * ell)
        )

    rmax = _cut_reach(envelope_cut) / (_SQRT2 * abs(sigma))
    epsabs = max(1e-300, 1e-14 * rmax)
    if abs(ell) * rmax > 1e3:
        n_nodes = int(abs(ell) * rmax / math.pi)
        nodes = [i * math.pi / abs(ell) for i in range(1, n_nodes + 1)]
        integral, err, neval, failed = _quad_split(f, 0.0, rmax, nodes, epsabs, limit)
    else:
        integral, err, neval, failed = _quad_piece(f, 0.0, rmax, epsabs, limit)
    lhs = _finish(1.0, integral, err, neval, failed)

    gs = gamma * gamma + sigma * sigma
    rhs = complex(
        0.5 * _SQRT_PI * math.exp(-ell * ell / (4.0 * gs)) / math.sqrt(gs)
        * math.erf(ell * gamma / (2.0 * abs(sigma) * math.sqrt(gs)))
    )
    return IdentityCheck(lhs=lhs, rhs=rhs)


def probe_integral_identity_complex(
    gamma: complex,
    sigma: float,
    ell: complex,
    envelope_cut: float = 1e-18,
    limit: int = 200,
) -> IdentityCheck:
    """Exploratory complex-parameter version of check_integral_identity.

    Not gated anywhere: the identity is asserted only for real parameters;
    this probe exists so complex-parameter behavior can be logged.  sigma
    stays real and |gamma| < |sigma| is still required for convergence.
    """
    gamma = complex(gamma)
    ell = complex(ell)
    if abs(gamma) >= abs(sigma):
        raise ValueError("identity needs |gamma| < |sigma|; integral diverges")

    gs = gamma * gamma + sigma * sigma

    def f(r: float) -> complex:
        return scaled_erfi(gamma * r, gs * r * r) * cmath.sin(r * ell)

    # Gaussian decay Re(gs) r^2 beats the exp(|Im ell| r) growth of sin
    decay = gs.real
    if decay <= 0.0:
        raise ValueError("Re(gamma^2 + sigma^2) must be positive")
    shift = abs(ell.imag) / (2.0 * decay)
    rmax = shift + _cut_reach(envelope_cut) / math.sqrt(2.0 * decay)
    peak = math.exp(min(700.0, shift * abs(ell.imag) / 2.0))
    epsabs = max(1e-300, 1e-14 * peak * rmax)
    integral, err, neval, failed = _quad_piece(f, 0.0, rmax, epsabs, limit)
    lhs = _finish(1.0, integral, err, neval, failed)

    rt = cmath.sqrt(gs)
    from .specfun import erf_c

    rhs = (
        0.5 * _SQRT_PI * cmath.exp(-ell * ell / (4.0 * gs)) / rt
        * erf_c(ell * gamma / (2.0 * abs(sigma) * rt))
    )
    return IdentityCheck(lhs=lhs, rhs=rhs)


# ---------------------------------------------------------------------------
# per-kind dispatch

def _combine(parts: list[tuple[complex, QuadratureResult]]) -> QuadratureResult:
    value = sum(c * r.value for c, r in parts)
    err = sum(abs(c) * r.abs_error_estimate for c, r in parts)
    neval = sum(r.evaluations for _, r in parts)
    return QuadratureResult(
        value=value, abs_error_estimate=err, evaluations=neval
    )


def oracle_value(
    kind,
    f1: GaussianSmearing,
    f2: GaussianSmearing,
    envelope_cut: float = 1e-18,
    limit: int = 200,
) -> QuadratureResult:
    """Quadrature route for any bi-distribution kind.

    The positive-frequency family combines momentum-space Wightman
    integrals (anticommutator = sum of the two orders, commutator =
    -i times their difference); the retarded family combines spacetime
    reductions, and the time-ordered value uses its own momentum
    integral when both profiles share T, sigma and Omega, falling back
    to the anticommutator/symmetric combination otherwise.  Every route
    is independent of the closed forms under test.
    """
    from .model import BiDistKind

    kind = BiDistKind(kind)
    kw = {"envelope_cut": envelope_cut, "limit": limit}
    if kind is BiDistKind.WIGHTMAN:
        return quad_W_momentum(f1, f2, **kw)
    if kind is BiDistKind.HADAMARD:
        return _combine([
            (1.0, quad_W_momentum(f1, f2, **kw)),
            (1.0, quad_W_momentum(f2, f1, **kw)),
        ])
    if kind is BiDistKind.CAUSAL:
        return _combine([
            (-1.0j, quad_W_momentum(f1, f2, **kw)),
            (1.0j, quad_W_momentum(f2, f1, **kw)),
        ])
    if kind is BiDistKind.RETARDED:
        return quad_GR_spacetime(f1, f2, **kw)
    if kind is BiDistKind.ADVANCED:
        return quad_GR_spacetime(f2, f1, **kw)
    if kind is BiDistKind.SYMMETRIC:
        return _combine([
            (1.0, quad_GR_spacetime(f1, f2, **kw)),
            (1.0, quad_GR_spacetime(f2, f1, **kw)),
        ])
    if kind is BiDistKind.FEYNMAN:
        same = (
            f1.T == f2.T and f1.sigma == f2.sigma and f1.Omega == f2.Omega
            and f1.sigma > 0.0
        )
        if same:
            return quad_GF_momentum(
                DetectorParams(lam=1.0, smearing=f1),
                DetectorParams(lam=1.0, smearing=f2),
                **kw,
            )
        return _combine([
            (0.5, quad_W_momentum(f1, f2, **kw)),
            (0.5, quad_W_momentum(f2, f1, **kw)),
            (0.5j, quad_GR_spacetime(f1, f2, **kw)),
            (0.5j, quad_GR_spacetime(f2, f1, **kw)),
        ])
    raise ValueError(f"no oracle route for kind {kind!r}")
