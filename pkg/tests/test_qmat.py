"""Dense qubit-pair algebra: eigensolver, partial transpose, norms."""

import math

import numpy as np
import pytest

from smearprop.qmat import (
    Basis,
    IDENT2,
    MU,
    P_EXCITED,
    P_GROUND,
    QubitOperator,
    SIGMA_MINUS,
    SIGMA_PLUS,
    TwoQubitState,
    basis_change,
    eig_hermitian,
    eig_hermitian_4,
    hs_norm_sq,
    negativity,
    partial_transpose_B,
    tensor_op,
)


def _state(m: np.ndarray, basis: Basis = Basis.ENERGY) -> TwoQubitState:
    return TwoQubitState(m=np.array(m, dtype=complex), basis=basis)


def _bell() -> TwoQubitState:
    v = np.zeros(4, dtype=complex)
    v[0] = v[3] = 1.0 / math.sqrt(2.0)
    return _state(np.outer(v, v.conj()))


def test_qubit_operator_validation():
    with pytest.raises(ValueError):
        QubitOperator(np.zeros((3, 3)))
    with pytest.raises(ValueError):
        QubitOperator(np.array([[np.inf, 0.0], [0.0, 0.0]]))
    assert np.array_equal(MU.m, (SIGMA_PLUS.m + SIGMA_MINUS.m))
    assert np.array_equal(IDENT2.m, (P_GROUND.m + P_EXCITED.m))


def test_two_qubit_state_validation():
    with pytest.raises(ValueError):
        _state(np.diag([1.0, 0.5, 0.0, 0.0]))  # trace 1.5
    bad = np.diag([0.25] * 4).astype(complex)
    bad[0, 1] = 1.0  # far from Hermitian
    with pytest.raises(ValueError):
        _state(bad)


def test_tensor_order_first_factor_is_detector_a():
    m = tensor_op(P_EXCITED, P_GROUND)
    assert m[2, 2] == 1.0 and np.count_nonzero(m) == 1


def test_jacobi_matches_numpy_on_random_hermitian(rng):
    for n in (2, 4, 16):
        for _ in range(6):
            a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            h = 0.5 * (a + a.conj().T)
            w, v = eig_hermitian(h)
            assert np.all(np.diff(w) >= 0.0)
            # eigen equation residual, unitarity, spectrum match
            assert np.linalg.norm(h @ v - v @ np.diag(w)) <= 1e-12 * n
            assert np.linalg.norm(v.conj().T @ v - np.eye(n)) <= 1e-12 * n
            ref = np.linalg.eigvalsh(h)
            assert np.max(np.abs(w - ref)) <= 1e-12 * np.max(np.abs(ref))


def test_eig_rejects_non_hermitian():
    with pytest.raises(ValueError):
        eig_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_partial_transpose_is_involutive_and_trace_preserving(rng):
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    h = 0.25 * (a + a.conj().T)
    h = h - np.eye(4) * (np.trace(h).real - 1.0) / 4.0
    s = _state(h)
    pt = partial_transpose_B(s)
    assert abs(np.trace(pt.m) - 1.0) <= 1e-12
    back = partial_transpose_B(pt)
    assert np.linalg.norm(back.m - s.m) <= 1e-14


def test_partial_transpose_of_product_state_keeps_spectrum(rng):
    pa = np.diag([0.7, 0.3]).astype(complex)
    pb = np.array([[0.6, 0.2 + 0.1j], [0.2 - 0.1j, 0.4]])
    s = _state(np.kron(pa, pb))
    w0 = eig_hermitian_4(s.m)
    w1 = eig_hermitian_4(partial_transpose_B(s).m)
    assert np.max(np.abs(np.array(w0) - np.array(w1))) <= 1e-13


def test_bell_state_partial_transpose_and_negativity():
    s = _bell()
    w = eig_hermitian_4(partial_transpose_B(s).m)
    assert abs(w[0] + 0.5) <= 1e-13
    assert abs(negativity(s) - 0.5) <= 1e-13


def test_negativity_of_separable_mixture_is_zero():
    s = _state(np.diag([0.4, 0.3, 0.2, 0.1]))
    assert negativity(s) == 0.0


def test_hs_norm_and_basis_change_round_trip():
    s = _bell()
    t = _state(np.diag([0.25] * 4))
    d = hs_norm_sq(s, t)
    # corner entries differ by 0.5, all four diagonals by 0.25
    want = 4 * 0.25**2 + 2 * 0.5**2
    assert abs(d - want) <= 1e-14
    with pytest.raises(ValueError):
        hs_norm_sq(s, _state(np.diag([0.25] * 4), Basis.MONOPOLE))
    m = basis_change(s, Basis.MONOPOLE)
    back = basis_change(m, Basis.ENERGY)
    assert back.basis is Basis.ENERGY
    assert np.linalg.norm(back.m - s.m) <= 1e-14


def test_basis_change_moves_monopole_projector_to_ground():
    plus = QubitOperator(np.full((2, 2), 0.5))
    s = _state(np.kron(plus.m, plus.m), Basis.MONOPOLE)
    e = basis_change(s, Basis.ENERGY)
    want = np.zeros((4, 4), dtype=complex)
    want[0, 0] = 1.0
    assert np.linalg.norm(e.m - want) <= 1e-14
