"""Complex error-function family with overflow-safe scaled variants.

All closed-form propagator expressions in this package reduce to the Faddeeva
function w(z) = exp(-z^2) erfc(-iz) plus elementary factors.  Evaluating the
textbook forms literally overflows once oscillation frequencies grow (the
erfi factors blow up like exp(|z|^2) while prefactors vanish at the same
rate), so every product of a Gaussian prefactor with an erf/erfi/w factor is
exposed here as a single fused primitive:

    wexp(m, z)        = exp(-m) w(z)
    scaled_erfi(a, b) = exp(-b) erfi(a)

with the exponent arithmetic done before anything is exponentiated.  Callers
arrange their exponents so the combined real part is non-positive; then no
intermediate can overflow.

Two interchangeable backends provide the raw primitives: a compiled core
(built from ``_specfun_core.pyx``) and a scipy fallback.  Selection happens
at import; set ``SMEARPROP_BACKEND=python`` or ``=compiled`` to force one.
"""

from __future__ import annotations

import cmath
import os

_requested = os.environ.get("SMEARPROP_BACKEND", "").strip().lower()

if _requested in ("", "compiled"):
    try:
        from . import _specfun_core as _backend
    except ImportError:
        if _requested == "compiled":
            raise
        from . import _specfun_py as _backend
elif _requested == "python":
    from . import _specfun_py as _backend
else:
    raise ImportError(f"unknown SMEARPROP_BACKEND {_requested!r}")

BACKEND: str = _backend.BACKEND_NAME

_SQRT_PI = 1.7724538509055160273


def backend_name() -> str:
    return BACKEND


def faddeeva_w(z: complex) -> complex:
    """w(z) = exp(-z^2) erfc(-iz) on the full complex plane.

    Bounded on the closed upper half-plane; in the lower half-plane the
    reflection term 2 exp(-z^2) dominates and its overflow (to inf) marks
    arguments whose true value exceeds double range.
    """
    return _backend.wofz(complex(z))


def erfcx(x: float) -> float:
    """exp(x^2) erfc(x) for real x (inf for x below about -26.6)."""
    return _backend.erfcx(float(x))


def dawson(x: float) -> float:
    """Dawson integral D(x) = exp(-x^2) int_0^x exp(t^2) dt, odd in x."""
    return _backend.dawsn(float(x))


def erf_c(z: complex) -> complex:
    """Error function for complex z.

    Exact saturation on the real direction: for |Re z| > 30 the result is
    +-1 to well below double resolution, and that saturated value is what
    comes back.  Along the imaginary direction the true value grows like
    exp(|Im z|^2) and eventually overflows to inf.
    """
    return _backend.erf_complex(complex(z))


def erfi_c(z: complex) -> complex:
    """Imaginary error function erfi(z) = -i erf(iz)."""
    return -1j * _backend.erf_complex(1j * complex(z))


def scaled_erfi(a: complex, b: complex) -> complex:
    """exp(-b) erfi(a) without ever forming exp(a^2).

    Uses exp(-a^2) erfi(a) = i (w(-a) - exp(-a^2)) and folds b into the
    remaining exponent, so the result is finite whenever Re(a^2 - b) stays
    within double range even if erfi(a) alone would overflow.
    """
    a = complex(a)
    b = complex(b)
    if a.imag <= 0.0:
        return 1j * (cmath.exp(a * a - b) * _backend.wofz(-a) - cmath.exp(-b))
    return 1j * (cmath.exp(-b) - cmath.exp(a * a - b) * _backend.wofz(a))


def wexp(m: float, z: complex) -> complex:
    """exp(-m) w(z) for real m, with the reflection folded into the exponent.

    For Im z >= 0 this is a plain product of bounded factors.  For Im z < 0
    the reflection term becomes 2 exp(-m - z^2); combining the exponents
    first keeps the result finite whenever the true value is.
    """
    z = complex(z)
    if z.imag >= 0.0:
        w = _backend.wofz(z)
        try:
            s = cmath.exp(-m)
        except OverflowError:
            return complex("inf") * w
        return s * w
    try:
        s = cmath.exp(-m)
    except OverflowError:
        s = complex("inf")
    return 2.0 * cmath.exp(-m - z * z) - s * _backend.wofz(-z)


def exp_erfc(c: complex, u: complex) -> complex:
    """exp(c) erfc(u) via the Faddeeva function, scaled against overflow.

    erfc(u) = exp(-u^2) w(iu) holds everywhere; for Re u < 0 the stable
    route is the reflection erfc(u) = 2 - erfc(-u).  Both branches fold c
    into the exponent before exponentiating.
    """
    c = complex(c)
    u = complex(u)
    if u.real >= 0.0:
        return cmath.exp(c - u * u) * _backend.wofz(1j * u)
    return 2.0 * cmath.exp(c) - cmath.exp(c - u * u) * _backend.wofz(-1j * u)
