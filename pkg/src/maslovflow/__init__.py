"""Signed crossing counts for paths of Lagrangian-plane pairs.

A pair of Lagrangian planes in R^{2n} determines a unitary matrix whose
-1 eigenvalues mark intersections.  Tracking its eigenvalue phases along a
path and counting signed passages through -1 gives an integer invariant of
the path; running that count around suitable parameter rectangles computes
Morse indices of matrix Schrodinger operators on an interval and on the
line.  Everything is cross-checkable against a finite-difference oracle.
"""

from .errors import (
    AmbiguousCrossing,
    BoxNotClosed,
    DegenerateProblemWarning,
    DegenerateRobinWarning,
    DimensionMismatch,
    DiscretizationUnstable,
    EigensolverFailure,
    EndpointsNotFixed,
    IntegratorFailure,
    InvalidBoundaryCondition,
    InvalidPotential,
    JunctionMismatch,
    LambdaNotBelowSpectrum,
    MaslovError,
    NoCrossing,
    NotLagrangian,
    NumericalFailure,
    PathTooCoarse,
    RankDeficient,
    RefinementExhausted,
    TruncationInsufficient,
)
from .frames import (
    ConjugationOperator,
    LagrangianFrame,
    NormalizedFrame,
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
from .unitary import (
    DirectSumSouriau,
    PairUnitary,
    SouriauMap,
    det_squared,
    direct_sum_souriau,
    folded_phases,
    intersection_dim,
    pair_unitary,
    souriau_map,
)
from .flow import (
    Crossing,
    LagrangianPairPath,
    MaslovResult,
    PhaseTrace,
    arnold_path,
    concatenate,
    homotopy_check,
    maslov_index,
    path_from_frames,
    reverse_path,
    sample_path,
    signed_crossing_sum,
    trace_from_csv,
    track_eigenvalue_paths,
    unit_eigenvalue_phases,
)
from .monotonicity import (
    CrossingForm,
    RotationGenerator,
    crossing_form,
    crossing_generator,
    intersection_basis,
    pair_crossing_form,
    rotation_direction,
    rotation_generator,
)
from .potentials import (
    ConstantLinePotential,
    ConstantPotential,
    DiagonalLinePotential,
    GaussianWellPotential,
    PolynomialPotential,
    PoschlTellerPotential,
    TabulatedLinePotential,
    TabulatedPotential,
    as_interval_potential,
    interval_potential_from_dict,
    line_potential_from_dict,
)
from .interval import (
    BoundaryDecomposition,
    CorrectionTerms,
    IntervalProblem,
    MaslovBoxReport,
    boundary_frames,
    correction_terms,
    decompose_boundary_condition,
    default_lambda_inf,
    evolve_family,
    evolve_frame,
    evolve_with_shift_derivative,
    interval_problem,
    maslov_box,
    morse_index_interval,
)
from .line import (
    AsymptoticFrame,
    LineProblem,
    LineReport,
    asymptotic_frames,
    default_delta,
    evolve_line_frame,
    line_problem,
    morse_index_line,
    pair_unitary_at,
)
from .oracle import (
    brute_intersection_dim,
    fd_morse_interval,
    fd_morse_line,
    interval_form_eigenvalues,
    line_eigenvalues,
)

__version__ = "0.1.0"
