"""Pure-Python special-function backend built on scipy.special.

Provides the same four primitives as the compiled core so the dispatcher in
``specfun`` can swap backends freely:

    wofz(z)         Faddeeva function w(z), full complex plane
    erfcx(x)        exp(x^2) erfc(x) for real x
    dawsn(x)        Dawson integral for real x
    erf_complex(z)  error function for complex z
"""

from __future__ import annotations

import cmath

import scipy.special as _sp

BACKEND_NAME = "python-scipy"


def wofz(z: complex) -> complex:
    # scipy's wofz already implements the scaled lower-half-plane reflection
    # and overflows to inf exactly where the true value leaves double range.
    return complex(_sp.wofz(z))


def erfcx(x: float) -> float:
    return float(_sp.erfcx(x))


def dawsn(x: float) -> float:
    return float(_sp.dawsn(x))


def erf_complex(z: complex) -> complex:
    if z.imag == 0.0:
        return complex(_sp.erf(z.real), 0.0)
    val = _sp.erf(complex(z))
    if cmath.isnan(val) and cmath.isfinite(z):
        # scipy can emit nan for extreme arguments whose true value overflows;
        # report the overflow direction instead so no NaN escapes.
        val = complex(float("inf") if z.real >= 0 else float("-inf"), 0.0)
    return complex(val)
