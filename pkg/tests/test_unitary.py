"""The pair unitary and its two orthogonal companions."""

import numpy as np
import pytest

from maslovflow import (
    DimensionMismatch,
    NormalizedFrame,
    brute_intersection_dim,
    det_squared,
    dirichlet_frame,
    direct_sum_souriau,
    folded_phases,
    horizontal_frame,
    intersection_dim,
    line_frame,
    pair_unitary,
    random_lagrangian,
    souriau_map,
    symplectic_j,
    validate_frame,
)


def planted_pair(n, k, seed):
    """Random Lagrangian pair whose intersection has dimension exactly k.

    Start from the horizontal plane and a partner agreeing on the first k
    axes and tilted by angles bounded away from 0 and pi on the rest, then
    rotate both by a random unitary (acting on R^{2n} as a block rotation),
    which preserves Lagrangian-ness and intersection dimensions.
    """
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0.35, np.pi - 0.35, size=n - k)
    X2 = np.eye(n)
    Y2 = np.zeros((n, n))
    for j, th in enumerate(theta):
        X2[k + j, k + j] = np.cos(th)
        Y2[k + j, k + j] = np.sin(th)
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, R = np.linalg.qr(Z)
    Q = Q * (np.diagonal(R) / np.abs(np.diagonal(R)))
    l1 = NormalizedFrame(Q.real.copy(), Q.imag.copy())
    U2 = Q @ (X2 + 1j * Y2)
    l2 = NormalizedFrame(U2.real.copy(), U2.imag.copy())
    return l1, l2


def _circ_sorted(vals):
    """Sorted phases in [0, 2pi); planted spectra stay away from 0."""
    return np.sort(np.angle(vals) % (2.0 * np.pi))


def test_pair_unitary_standard_pairs():
    h = horizontal_frame(2)
    d = dirichlet_frame(2)
    assert np.allclose(pair_unitary(h, d).matrix, np.eye(2), atol=1e-12)
    assert np.allclose(pair_unitary(h, h).matrix, -np.eye(2), atol=1e-12)


def test_pair_unitary_rotating_line():
    # against the fixed horizontal line, the angle-t line gives -e^{-2it}
    fixed = line_frame(0.0)
    for t in (0.3, -0.7, np.pi / 4):
        w = pair_unitary(fixed, line_frame(t)).matrix
        assert abs(w[0, 0] - (-np.exp(-2j * t))) < 1e-12
    assert abs(pair_unitary(fixed, line_frame(np.pi / 4)).matrix[0, 0] - 1j) < 1e-12


def test_pair_unitary_frame_choice_invariant():
    rng = np.random.default_rng(5)
    l1 = random_lagrangian(3, 1)
    l2 = random_lagrangian(3, 2)
    w = pair_unitary(l1, l2).matrix
    R = rng.standard_normal((3, 3)) + 3.0 * np.eye(3)
    l1b = validate_frame(l1.X @ R, l1.Y @ R)
    assert np.max(np.abs(pair_unitary(l1b, l2).matrix - w)) < 1e-9


def test_swap_conjugates_spectrum():
    l1, l2 = planted_pair(4, 1, 99)
    lam = np.linalg.eigvals(pair_unitary(l1, l2).matrix)
    mal = np.linalg.eigvals(pair_unitary(l2, l1).matrix)
    assert np.max(np.abs(_circ_sorted(lam) - _circ_sorted(mal.conj()))) < 1e-8


def test_intersection_dim_matches_brute_force():
    rng = np.random.default_rng(42)
    for case in range(60):
        n = int(rng.integers(1, 6))
        k = int(rng.integers(0, n + 1))
        l1, l2 = planted_pair(n, k, 500 + case)
        assert intersection_dim(l1, l2) == k
        assert brute_intersection_dim(l1, l2) == k


def test_det_squared_unit_modulus_and_conjugate_under_swap():
    l1, l2 = planted_pair(3, 0, 17)
    d = det_squared(l1, l2)
    assert abs(abs(d) - 1.0) < 1e-12
    assert abs(det_squared(l2, l1) - np.conj(d)) < 1e-10


def test_souriau_map_is_orthogonal_and_commutes_with_j():
    l1, l2 = planted_pair(3, 1, 23)
    W = souriau_map(l1, l2).matrix
    J = symplectic_j(3)
    assert np.max(np.abs(W.T @ W - np.eye(6))) < 1e-10
    assert np.max(np.abs(W @ J - J @ W)) < 1e-10


def test_souriau_complex_form_reproduces_pair_unitary():
    l1, l2 = planted_pair(3, 2, 31)
    Wt = pair_unitary(l1, l2).matrix
    assert np.max(np.abs(souriau_map(l1, l2).complex_form() - Wt)) < 1e-10


def test_souriau_spectrum_doubles():
    # spec W = spec W~ together with its conjugates; at -1 the real
    # multiplicity is exactly twice the intersection dimension
    for n, k, seed in ((3, 0, 1), (4, 2, 2), (5, 5, 3), (2, 1, 4)):
        l1, l2 = planted_pair(n, k, seed)
        small = np.linalg.eigvals(pair_unitary(l1, l2).matrix)
        big = _circ_sorted(np.linalg.eigvals(souriau_map(l1, l2).matrix))
        doubled = _circ_sorted(np.concatenate([small, small.conj()]))
        assert np.max(np.abs(big - doubled)) < 1e-7
        W = souriau_map(l1, l2).matrix
        mult = int(np.sum(np.abs(np.angle(-np.linalg.eigvals(W))) <= 1e-8))
        assert mult == 2 * k


def test_direct_sum_souriau_squares_onto_pair_spectrum():
    # -nu^2 over the 2n structured eigenvalues covers spec W~ twice
    for n, k, seed in ((2, 0, 6), (3, 1, 7), (4, 4, 8)):
        l1, l2 = planted_pair(n, k, seed)
        WW = direct_sum_souriau(l1, l2)
        assert np.max(np.abs(WW.matrix.T @ WW.matrix - np.eye(4 * n))) < 1e-10
        nu = WW.structured_spectrum()
        lam = np.linalg.eigvals(pair_unitary(l1, l2).matrix)
        got = _circ_sorted(-nu**2)
        want = _circ_sorted(np.concatenate([lam, lam]))
        assert np.max(np.abs(got - want)) < 1e-7
        mult = int(np.sum(np.abs(np.angle(-np.linalg.eigvals(WW.matrix))) <= 1e-8))
        assert mult == 2 * k


def test_folded_phases_of_real_matrix_come_in_pairs():
    l1, l2 = planted_pair(3, 1, 13)
    ph = folded_phases(souriau_map(l1, l2).matrix)
    assert ph.shape == (6,)
    assert np.all(np.diff(ph) >= -1e-12)
    assert np.max(np.abs(ph[0::2] - ph[1::2])) < 1e-8


def test_dimension_mismatch_raises():
    with pytest.raises(DimensionMismatch):
        pair_unitary(horizontal_frame(2), horizontal_frame(3))
    with pytest.raises(DimensionMismatch):
        souriau_map(horizontal_frame(2), horizontal_frame(3))
