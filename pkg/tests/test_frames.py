"""Frame validation, normalization and the gap metric."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maslovflow import (
    DimensionMismatch,
    NotLagrangian,
    RankDeficient,
    conjugation,
    dirichlet_frame,
    distance,
    frame_from_dict,
    frame_from_subspace,
    frame_to_dict,
    horizontal_frame,
    line_frame,
    normalize_frame,
    pair_distance,
    projection,
    random_lagrangian,
    symplectic_j,
    validate_frame,
)


def test_symplectic_j_square():
    for n in (1, 2, 5):
        J = symplectic_j(n)
        assert np.allclose(J @ J, -np.eye(2 * n))
        assert np.allclose(J.T, -J)


def test_validate_accepts_standard_frames():
    f = validate_frame(np.eye(3), np.zeros((3, 3)))
    assert f.n == 3
    assert f.stacked.shape == (6, 3)


def test_validate_rejects_non_lagrangian():
    X = np.eye(2)
    Y = np.array([[0.0, 1.0], [0.0, 0.0]])  # X^t Y not symmetric
    with pytest.raises(NotLagrangian):
        validate_frame(X, Y)


def test_validate_rejects_rank_deficient():
    with pytest.raises(RankDeficient):
        validate_frame(np.zeros((2, 2)), np.zeros((2, 2)))


def test_validate_rejects_bad_shapes():
    with pytest.raises(DimensionMismatch):
        validate_frame(np.eye(2), np.zeros((3, 3)))
    with pytest.raises(DimensionMismatch):
        validate_frame(np.ones((3, 2)), np.ones((3, 2)))


def test_frames_are_read_only():
    f = validate_frame(np.eye(2), np.zeros((2, 2)))
    with pytest.raises(ValueError):
        f.X[0, 0] = 5.0


def test_normalize_frame_orthonormal_same_subspace():
    X = np.array([[3.0, 0.0], [1.0, 2.0]])
    Y = np.array([[0.0, 0.0], [0.0, 0.0]])
    f = validate_frame(X, Y)
    g = normalize_frame(f)
    gram = g.X.T @ g.X + g.Y.T @ g.Y
    assert np.allclose(gram, np.eye(2), atol=1e-12)
    assert distance(f, g) < 1e-12


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 5), seed=st.integers(0, 2**31))
def test_projection_invariant_under_frame_change(n, seed):
    rng = np.random.default_rng(seed)
    f = random_lagrangian(n, seed)
    R = rng.standard_normal((n, n)) + 3.0 * np.eye(n)  # safely invertible
    g = validate_frame(f.X @ R, f.Y @ R)
    assert np.max(np.abs(projection(f) - projection(g))) < 1e-8
    assert distance(f, g) < 1e-8


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 5), seed=st.integers(0, 2**31))
def test_random_lagrangian_is_normalized_and_isotropic(n, seed):
    f = random_lagrangian(n, seed)
    skew = f.X.T @ f.Y - f.Y.T @ f.X
    gram = f.X.T @ f.X + f.Y.T @ f.Y
    assert np.max(np.abs(skew)) < 1e-12
    assert np.allclose(gram, np.eye(n), atol=1e-12)


def test_projection_properties():
    f = random_lagrangian(3, 7)
    P = projection(f)
    assert np.allclose(P, P.T)
    assert np.allclose(P @ P, P)
    assert abs(np.trace(P) - 3.0) < 1e-10
    # the image of the projection is the subspace itself
    assert np.max(np.abs(P @ f.stacked - f.stacked)) < 1e-10


def test_conjugation_reflects_and_anticommutes_with_j():
    f = random_lagrangian(2, 3)
    tau = conjugation(f).matrix
    J = symplectic_j(2)
    assert np.allclose(tau @ tau, np.eye(4))
    assert np.allclose(tau, tau.T)
    assert np.max(np.abs(tau @ J + J @ tau)) < 1e-10
    assert np.max(np.abs(tau @ f.stacked - f.stacked)) < 1e-10


def test_distance_metric_values():
    h = horizontal_frame(2)
    d = dirichlet_frame(2)
    assert distance(h, h) == 0.0
    assert abs(distance(h, d) - 1.0) < 1e-12
    assert abs(distance(h, d) - distance(d, h)) < 1e-14


def test_line_frame_distance_is_sine_of_angle():
    for a, b in ((0.0, 0.3), (0.2, 1.4), (-0.5, 0.5)):
        got = distance(line_frame(a), line_frame(b))
        assert abs(got - abs(np.sin(a - b))) < 1e-12


def test_pair_distance_is_hypot():
    pa = (horizontal_frame(1), line_frame(0.4))
    pb = (horizontal_frame(1), line_frame(0.9))
    d = distance(line_frame(0.4), line_frame(0.9))
    assert abs(pair_distance(pa, pb) - d) < 1e-14


def test_frame_from_subspace_shape_check():
    with pytest.raises(DimensionMismatch):
        frame_from_subspace(np.ones((3, 2)))
    f = frame_from_subspace(np.vstack([np.eye(2), np.zeros((2, 2))]))
    assert distance(f, horizontal_frame(2)) < 1e-12


def test_dict_round_trip():
    f = random_lagrangian(3, 11)
    g = frame_from_dict(frame_to_dict(f))
    assert distance(f, g) < 1e-12


def test_dict_malformed_records():
    with pytest.raises(DimensionMismatch):
        frame_from_dict({"n": 2, "X": [[1.0]], "Y": [[0.0]]})
    with pytest.raises(DimensionMismatch):
        frame_from_dict({"X": [[1.0]]})
