"""Domain types: Gaussian smearing parameters, pair geometry, result records.

A smearing profile is

    f(t, x) = exp(-(t - t0)^2 / 2T^2) exp(i Omega t)
              exp(-|x - L|^2 / 2 sigma^2) / (2 pi sigma^2)^(3/2)

with sigma = 0 meaning the point-like (delta) spatial profile.  Two-point
evaluations depend on the centers only through dt = t1 - t2 and
sep = |L1 - L2|, apart from the overall phase exp(i(Omega1 t1 + Omega2 t2)).

Complex scalars are plain Python ``complex`` throughout; no wrapper type.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field


class BiDistKind(enum.Enum):
    WIGHTMAN = "wightman"
    HADAMARD = "hadamard"
    CAUSAL = "causal"
    RETARDED = "retarded"
    ADVANCED = "advanced"
    SYMMETRIC = "symmetric"
    FEYNMAN = "feynman"


# kinds whose closed forms divide by sigma and therefore reject sigma = 0
G_FAMILY = (
    BiDistKind.RETARDED,
    BiDistKind.ADVANCED,
    BiDistKind.SYMMETRIC,
    BiDistKind.FEYNMAN,
)


def _finite(x: float, name: str) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"{name} must be finite, got {x!r}")
    return x


@dataclass(frozen=True)
class GaussianSmearing:
    """One Gaussian test function: temporal width T, center t0, internal
    frequency Omega, spatial width sigma and spatial center L."""

    T: float
    t0: float = 0.0
    Omega: float = 0.0
    sigma: float = 0.0
    L: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "T", _finite(self.T, "T"))
        object.__setattr__(self, "t0", _finite(self.t0, "t0"))
        object.__setattr__(self, "Omega", _finite(self.Omega, "Omega"))
        object.__setattr__(self, "sigma", _finite(self.sigma, "sigma"))
        if self.T <= 0.0:
            raise ValueError(f"T must be positive, got {self.T}")
        if self.sigma < 0.0:
            raise ValueError(f"sigma must be non-negative, got {self.sigma}")
        L = tuple(_finite(c, "L component") for c in self.L)
        if len(L) != 3:
            raise ValueError(f"L must be a 3-vector, got {self.L!r}")
        object.__setattr__(self, "L", L)

    def shifted(self, **kw) -> "GaussianSmearing":
        """Copy with some fields replaced (convenience for sweeps)."""
        out = {
            "T": self.T, "t0": self.t0, "Omega": self.Omega,
            "sigma": self.sigma, "L": self.L,
        }
        out.update(kw)
        return GaussianSmearing(**out)


@dataclass(frozen=True)
class PairGeometry:
    """Reduced two-point geometry: sep = |L1 - L2| >= 0, dt = t1 - t2."""

    sep: float
    dt: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "sep", _finite(self.sep, "sep"))
        object.__setattr__(self, "dt", _finite(self.dt, "dt"))
        if self.sep < 0.0:
            raise ValueError(f"sep must be non-negative, got {self.sep}")


def pair_geometry(f1: GaussianSmearing, f2: GaussianSmearing) -> PairGeometry:
    d = [a - b for a, b in zip(f1.L, f2.L)]
    return PairGeometry(sep=math.sqrt(sum(c * c for c in d)), dt=f1.t0 - f2.t0)


@dataclass(frozen=True)
class DetectorParams:
    """Coupling strength plus the smearing profile of one detector."""

    lam: float
    smearing: GaussianSmearing

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", _finite(self.lam, "lam"))
        if self.lam < 0.0:
            raise ValueError(f"lam must be non-negative, got {self.lam}")


@dataclass(frozen=True)
class DerivedScales:
    alpha: float
    ell: float
    Sigma2: float


def derived_scales(a: GaussianSmearing, b: GaussianSmearing) -> DerivedScales:
    """Dimensionless combinations that control the closed forms.

    alpha = sqrt(1 + sigma^2/T^2) of the first smearing, ell = sep/T, and
    Sigma2 = T1^2 + T2^2 + sigma1^2 + sigma2^2.
    """
    geo = pair_geometry(a, b)
    alpha = math.sqrt(1.0 + (a.sigma / a.T) ** 2)
    return DerivedScales(
        alpha=alpha,
        ell=geo.sep / a.T,
        Sigma2=a.T**2 + b.T**2 + a.sigma**2 + b.sigma**2,
    )


@dataclass(frozen=True)
class PropagatorValue:
    """One smeared two-point evaluation; overflow marks a value whose exact
    magnitude exceeded double range during scaled evaluation."""

    value: complex
    kind: BiDistKind
    overflow: bool = field(default=False)

    @property
    def re(self) -> float:
        return self.value.real

    @property
    def im(self) -> float:
        return self.value.imag
