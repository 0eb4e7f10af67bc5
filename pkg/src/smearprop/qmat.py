"""Dense complex linear algebra for detector states.

Two bases for a detector qubit show up: the energy basis (|g>, |e>) and
the monopole-moment eigenbasis (|+>, |->) with |+-> = (|g> +- |e>)/sqrt2.
A state carries its basis tag; mixing tags is rejected rather than
silently reinterpreted.

Eigenvalues come from a cyclic complex Jacobi iteration. For the 4x4 and
16x16 Hermitian matrices handled here it is unconditionally stable and
keeps the whole pipeline dependency-light; numpy is used only for array
storage and products.
"""
from __future__ import annotations

import dataclasses
import enum
import math

import numpy as np

__all__ = [
    "Basis",
    "QubitOperator",
    "TwoQubitState",
    "IDENT2",
    "MU",
    "SIGMA_PLUS",
    "SIGMA_MINUS",
    "P_GROUND",
    "P_EXCITED",
    "tensor_op",
    "eig_hermitian",
    "eig_hermitian_4",
    "partial_transpose_B",
    "negativity",
    "hs_norm_sq",
    "basis_change",
]

_HERM_TOL = 1e-10
_TRACE_TOL = 1e-12


class Basis(enum.Enum):
    ENERGY = "energy"
    MONOPOLE = "monopole"


@dataclasses.dataclass(frozen=True)
class QubitOperator:
    """A single-qubit operator, 2x2 complex, finite entries."""

    m: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.m, dtype=complex)
        if arr.shape != (2, 2):
            raise ValueError("QubitOperator needs a 2x2 matrix")
        if not np.all(np.isfinite(arr.view(float))):
            raise ValueError("QubitOperator entries must be finite")
        arr.flags.writeable = False
        object.__setattr__(self, "m", arr)


# energy-basis index order (|g>, |e>)
IDENT2 = QubitOperator(np.eye(2))
SIGMA_PLUS = QubitOperator(np.array([[0.0, 0.0], [1.0, 0.0]]))
SIGMA_MINUS = QubitOperator(np.array([[0.0, 1.0], [0.0, 0.0]]))
MU = QubitOperator(np.array([[0.0, 1.0], [1.0, 0.0]]))
P_GROUND = QubitOperator(np.array([[1.0, 0.0], [0.0, 0.0]]))
P_EXCITED = QubitOperator(np.array([[0.0, 0.0], [0.0, 1.0]]))


def tensor_op(a: QubitOperator, b: QubitOperator) -> np.ndarray:
    """Kronecker product, first factor acting on detector A."""
    return np.kron(a.m, b.m)


@dataclasses.dataclass(frozen=True)
class TwoQubitState:
    """A two-detector density matrix with its basis tag.

    Construction checks shape, finiteness, Hermiticity and unit trace.
    Positivity is NOT checked here: the partial transpose of an entangled
    state is a legitimate value of this type with negative spectrum, so
    positivity is asserted explicitly (assert_positive) by the code that
    produces physical states.
    """

    m: np.ndarray
    basis: Basis

    def __post_init__(self) -> None:
        arr = np.array(self.m, dtype=complex)
        if arr.shape != (4, 4):
            raise ValueError("TwoQubitState needs a 4x4 matrix")
        if not np.all(np.isfinite(arr.view(float))):
            raise ValueError("TwoQubitState entries must be finite")
        herm = float(np.linalg.norm(arr - arr.conj().T))
        if herm > _HERM_TOL:
            raise ValueError(f"matrix is not Hermitian: deviation {herm:.3e}")
        tr = arr.trace()
        if abs(tr - 1.0) > _TRACE_TOL:
            raise ValueError(f"trace must be 1, got {tr:.17g}")
        arr = 0.5 * (arr + arr.conj().T)
        arr.flags.writeable = False
        object.__setattr__(self, "m", arr)
        if not isinstance(self.basis, Basis):
            raise ValueError("basis must be a Basis member")

    def assert_positive(self, psd_tol: float = 1e-10) -> None:
        """Require all eigenvalues >= -psd_tol.

        The default tolerance admits the tiny negative dips that
        second-order perturbative truncation produces; callers pass a
        coupling-dependent tolerance where that bound is known.
        """
        w, _ = eig_hermitian(self.m)
        if w[0] < -psd_tol:
            raise ValueError(
                f"state has negative eigenvalue {w[0]:.3e} below -{psd_tol:.1e}"
            )

    def eigenvalues(self) -> list[float]:
        w, _ = eig_hermitian(self.m)
        return list(w)


def _jacobi_rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    g = a[p, q]
    ag = abs(g)
    if ag <= 1e-300 or ag <= 1e-17 * (abs(a[p, p].real) + abs(a[q, q].real)):
        # below roundoff relative to the diagonal: rotation is a no-op
        a[p, q] = 0.0
        a[q, p] = 0.0
        return
    # zero a[p,q]: t solves t^2 - 2 tau t - 1 = 0, smaller-magnitude root
    tau = (a[q, q].real - a[p, p].real) / (2.0 * ag)
    t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
    c = 1.0 / math.sqrt(1.0 + t * t)
    s = t * c * (g / ag)
    rot = np.array([[c, s], [-s.conjugate(), c]])
    idx = [p, q]
    a[:, idx] = a[:, idx] @ rot
    a[idx, :] = rot.conj().T @ a[idx, :]
    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real
    v[:, idx] = v[:, idx] @ rot


def eig_hermitian(
    m: np.ndarray, sweep_tol: float = 1e-14, max_sweeps: int = 60
) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    Returns (w, V) with w real ascending and V unitary, m V = V diag(w)
    up to roundoff. Off-diagonal mass is swept until it falls below
    sweep_tol times the Frobenius norm.
    """
    a = np.array(m, dtype=complex)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("eig_hermitian needs a square matrix")
    herm = float(np.linalg.norm(a - a.conj().T))
    scale = float(np.linalg.norm(a))
    if herm > _HERM_TOL * max(1.0, scale):
        raise ValueError(f"matrix is not Hermitian: deviation {herm:.3e}")
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    if scale == 0.0:
        return np.zeros(n), v
    offmask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        # norm over the off-diagonal entries themselves; subtracting
        # squared norms cancels catastrophically near convergence
        off = float(np.linalg.norm(a[offmask]))
        if off <= sweep_tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _jacobi_rotate(a, v, p, q)
    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def eig_hermitian_4(m: np.ndarray) -> list[float]:
    """Ascending eigenvalues of a Hermitian 4x4 matrix."""
    arr = np.array(m, dtype=complex)
    if arr.shape != (4, 4):
        raise ValueError("eig_hermitian_4 needs a 4x4 matrix")
    w, _ = eig_hermitian(arr)
    return list(w)


def partial_transpose_B(rho: TwoQubitState) -> TwoQubitState:
    """Transpose the second tensor factor; involutive, trace and
    Hermiticity preserved exactly."""
    pt = rho.m.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)
    return TwoQubitState(m=pt, basis=rho.basis)


def negativity(rho: TwoQubitState) -> float:
    """Sum of |negative eigenvalues| of the partial transpose."""
    w, _ = eig_hermitian(partial_transpose_B(rho).m)
    return float(-np.sum(w[w < 0.0]))


def hs_norm_sq(a: TwoQubitState, b: TwoQubitState) -> float:
    """Squared Hilbert-Schmidt distance tr((a-b)^dag (a-b))."""
    if a.basis is not b.basis:
        raise ValueError("hs_norm_sq needs both states in the same basis")
    d = a.m - b.m
    return float(np.sum(np.abs(d) ** 2))


_HAD = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)
_HAD2 = np.kron(_HAD, _HAD)


def basis_change(rho: TwoQubitState, to: Basis) -> TwoQubitState:
    """Re-express a state in the other basis tag via the involutive
    (|g>,|e>) <-> (|+>,|->) rotation on each qubit."""
    if rho.basis is to:
        return TwoQubitState(m=rho.m.copy(), basis=to)
    return TwoQubitState(m=_HAD2 @ rho.m @ _HAD2, basis=to)
