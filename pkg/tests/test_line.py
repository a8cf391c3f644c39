"""The whole-line problem: asymptotic planes, transport, the shelf count."""

import numpy as np
import pytest

from maslovflow import (
    ConstantLinePotential,
    DiagonalLinePotential,
    DimensionMismatch,
    GaussianWellPotential,
    InvalidPotential,
    LambdaNotBelowSpectrum,
    PoschlTellerPotential,
    asymptotic_frames,
    default_delta,
    distance,
    evolve_line_frame,
    line_problem,
    maslov_index,
    morse_index_line,
    pair_unitary_at,
)
from maslovflow.line import _shelf_path

PT6 = PoschlTellerPotential(2.0, 6.0)
PT12 = PoschlTellerPotential(2.0, 12.0)


def test_line_problem_rejects_negative_limits():
    with pytest.raises(InvalidPotential):
        line_problem(ConstantLinePotential([[-1.0]]))
    with pytest.raises(InvalidPotential):
        line_problem("not a potential")
    with pytest.raises(DimensionMismatch):
        line_problem(PT6, L=0.0)


def test_automatic_window_widths():
    assert line_problem(ConstantLinePotential([[1.0]])).L == 2.0
    assert line_problem(PT6).L == 12.0
    assert line_problem(PT12).L == 14.0
    assert line_problem(GaussianWellPotential(1.0, 6.0, 1.0)).L == 6.0


def test_asymptotic_rates_and_frames():
    prob = line_problem(ConstantLinePotential([[2.0]]))
    minus, plus = asymptotic_frames(prob, -2.0)
    assert abs(minus.rates[0] - 2.0) < 1e-12
    assert abs(plus.rates[0] + 2.0) < 1e-12
    for af in (minus, plus):
        f = af.frame
        assert abs((f.X.T @ f.X + f.Y.T @ f.Y)[0, 0] - 1.0) < 1e-12
    with pytest.raises(LambdaNotBelowSpectrum):
        asymptotic_frames(prob, 2.0)


def test_constant_potential_plane_is_stationary():
    prob = line_problem(ConstantLinePotential([[2.0]]))
    minus, _ = asymptotic_frames(prob, -1.0)
    for x in (0.0, prob.L):
        moved = evolve_line_frame(prob, -1.0, x)
        assert distance(moved, minus.frame) < 1e-12


def test_transport_is_bitwise_deterministic():
    prob = line_problem(PT6, L=4.0)
    a = evolve_line_frame(prob, -0.01, 1.3)
    b = evolve_line_frame(prob, -0.01, 1.3)
    assert np.array_equal(a.stacked, b.stacked)
    wa = pair_unitary_at(prob, 0.5, -0.01).matrix
    wb = pair_unitary_at(prob, 0.5, -0.01).matrix
    assert np.array_equal(wa, wb)


def test_default_delta_is_capped_by_potential_scale():
    d = default_delta(line_problem(PT6))
    assert abs(d - 5e-3) < 1e-12


def test_counts_against_oracle():
    assert morse_index_line(line_problem(ConstantLinePotential([[1.0]])),
                            verify=True).morse_index == 0
    rep6 = morse_index_line(line_problem(PT6), verify=True)
    assert rep6.morse_index == 1 and rep6.oracle_match is True
    rep12 = morse_index_line(line_problem(PT12), verify=True)
    assert rep12.morse_index == 2 and rep12.oracle_match is True
    gauss = line_problem(GaussianWellPotential(1.0, 6.0, 1.0))
    assert morse_index_line(gauss, verify=True).morse_index == 1


def test_diagonal_potential_counts_add():
    pot = DiagonalLinePotential((PT6, PT12))
    rep = morse_index_line(line_problem(pot), verify=True)
    assert rep.morse_index == 3
    assert rep.oracle_match is True


def test_shelf_crossing_location():
    rep = morse_index_line(line_problem(PT6))
    (c,) = rep.edges["shelf"].crossings
    assert abs(c.t - (-0.169)) < 5e-3
    assert c.direction == "cw" and c.net == -1


def test_deep_shelf_moves_the_crossing():
    # against shift -1.9 the only eigenvalue sits just below; its crossing
    # slides far to the right of the well
    path = _shelf_path(line_problem(PT6, L=8.0), -1.9, 200, 200)
    res = maslov_index(path)
    assert res.index == -1
    (c,) = res.crossings
    assert abs(c.t - 0.868) < 5e-2


def test_count_is_stable_in_delta():
    prob = line_problem(PT6)
    for delta in (5e-3, 1e-4, 1e-5):
        assert morse_index_line(prob, delta=delta).morse_index == 1


def test_full_rectangle_closes_at_small_window():
    for L, samples in ((0.75, 600), (1.0, 800)):
        rep = morse_index_line(line_problem(PT6, L=L), samples=samples,
                               full_box=True)
        assert rep.morse_index == 1
        assert rep.shelf_indices == {
            "shelf": -1, "far_end": 1, "deep": 0, "near_end": 0,
        }
        assert sum(rep.shelf_indices.values()) == 0


def test_truncation_stability_flag():
    rep = morse_index_line(line_problem(PT6), check_truncation=True)
    assert rep.truncation_stable is True
    assert rep.morse_index == 1


def test_window_doubling_keeps_the_count():
    assert morse_index_line(line_problem(PT6, L=12.0)).morse_index == 1
    assert morse_index_line(line_problem(PT6, L=24.0)).morse_index == 1


def test_parameter_validation():
    prob = line_problem(PT6, L=4.0)
    with pytest.raises(DimensionMismatch):
        morse_index_line(prob, delta=-1e-3)
    with pytest.raises(DimensionMismatch):
        morse_index_line(prob, delta=1e-2, lambda_inf=1e-3, full_box=True)
