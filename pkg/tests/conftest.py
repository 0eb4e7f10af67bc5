import numpy as np
import pytest

from smearprop.model import GaussianSmearing


def rel_err(a: complex, b: complex, *terms: complex) -> float:
    """|a - b| against the largest participating magnitude."""
    scale = max(abs(a), abs(b), *(abs(t) for t in terms))
    return abs(a - b) / scale if scale > 0.0 else 0.0


def random_pair(rng: np.random.Generator, sigma_zero_ok: bool = False):
    """One smearing pair from the certification box; shared sigma."""
    sigma = 0.0 if sigma_zero_ok and rng.uniform() < 0.15 else float(
        rng.uniform(0.02, 2.0))
    f1 = GaussianSmearing(
        T=float(rng.uniform(0.1, 10.0)),
        t0=float(rng.uniform(-10.0, 10.0)),
        Omega=float(rng.uniform(-3.0, 3.0)),
        sigma=sigma,
    )
    f2 = GaussianSmearing(
        T=float(rng.uniform(0.1, 10.0)),
        t0=0.0,
        Omega=float(rng.uniform(-3.0, 3.0)),
        sigma=sigma,
        L=(float(rng.uniform(0.1, 30.0)), 0.0, 0.0),
    )
    return f1, f2


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260822)
