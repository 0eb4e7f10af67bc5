"""Closed-form smeared two-point functions of a massless field in vacuum,
quadrature oracles to certify them, and the detector-pair applications built
on top (perturbative harvesting state, non-perturbative gapless channel)."""

from .model import (
    BiDistKind,
    DetectorParams,
    GaussianSmearing,
    PairGeometry,
    PropagatorValue,
    derived_scales,
    pair_geometry,
)
from .propagators import (
    evaluate,
    general_Delta,
    general_E,
    general_GA,
    general_GF,
    general_GR,
    general_H,
    general_W,
    limit_L0_Delta,
    limit_L0_E,
    limit_L0_GA,
    limit_L0_GF,
    limit_L0_GR,
    limit_L0_H,
    limit_L0_W,
    momentum_twopoint,
    momentum_twopoint_fd,
)
from .specfun import backend_name

__version__ = "1.0.0"

__all__ = [
    "BiDistKind",
    "DetectorParams",
    "GaussianSmearing",
    "PairGeometry",
    "PropagatorValue",
    "backend_name",
    "derived_scales",
    "evaluate",
    "general_Delta",
    "general_E",
    "general_GA",
    "general_GF",
    "general_GR",
    "general_H",
    "general_W",
    "limit_L0_Delta",
    "limit_L0_E",
    "limit_L0_GA",
    "limit_L0_GF",
    "limit_L0_GR",
    "limit_L0_H",
    "limit_L0_W",
    "momentum_twopoint",
    "momentum_twopoint_fd",
    "pair_geometry",
    "__version__",
]
