"""Morse indices of matrix Schrodinger operators on the unit interval.

The operator is H = -d^2/dx^2 + V(x) on [0, 1] with self-adjoint boundary
conditions a1 y(0) + a2 y'(0) = 0 and b1 y(1) + b2 y'(1) = 0.  The space of
solutions satisfying the left condition, evolved to x = s and shifted by a
spectral parameter, traces a path of Lagrangian planes.  Pairing it against
the fixed frame of the right condition and counting signed phase crossings
around a rectangle in the (shift, s) parameter square gives the number of
negative eigenvalues, up to two finite-dimensional corrections coming from
the corner where the rectangle stops short of s = 0.
"""

from __future__ import annotations

import bisect
import warnings
from dataclasses import dataclass, replace

import numpy as np

from ._numeric import inv_sqrt_spd, nullspace, orthonormal_range
from .errors import (
    BoxNotClosed,
    DegenerateProblemWarning,
    DegenerateRobinWarning,
    DimensionMismatch,
    IntegratorFailure,
    InvalidBoundaryCondition,
    NumericalFailure,
)
from .flow import MAX_REFINE, TOL_PHASE, MaslovResult, maslov_index, path_from_frames
from .frames import NormalizedFrame, _freeze, distance, normalize_frame, validate_frame
from .potentials import MatrixPotential, as_interval_potential

DEFAULT_STEPS = 2000
DEFAULT_EDGE_SAMPLES = 400
DEFAULT_S0 = 0.05
DRIFT_TOL = 1e-7
EDGE_NAMES = ("bottom", "right", "top", "left")


# ---------------------------------------------------------------------------
# problem definition


def _normalize_rows(a1, a2, where, tol=1e-8, rank_rtol=1e-10):
    """Validate one boundary condition and normalize a1 a1^t + a2 a2^t = I."""
    a1 = np.asarray(a1, dtype=float)
    a2 = np.asarray(a2, dtype=float)
    if a1.ndim != 2 or a1.shape[0] != a1.shape[1] or a1.shape != a2.shape:
        raise DimensionMismatch(
            f"{where} boundary blocks must be equal square matrices, "
            f"got {a1.shape} and {a2.shape}"
        )
    if not (np.all(np.isfinite(a1)) and np.all(np.isfinite(a2))):
        raise InvalidBoundaryCondition(f"{where} boundary data is not finite")
    rows = np.hstack([a1, a2])
    s = np.linalg.svd(rows, compute_uv=False)
    if s[-1] <= rank_rtol * s[0]:
        raise InvalidBoundaryCondition(
            f"{where} boundary rows are rank deficient "
            f"(singular values {s[0]:.3e} .. {s[-1]:.3e})"
        )
    sym = a1 @ a2.T
    defect = float(np.max(np.abs(sym - sym.T)))
    if defect > tol * max(1.0, s[0] ** 2):
        raise InvalidBoundaryCondition(
            f"{where} boundary condition is not self-adjoint "
            f"(a1 a2^t asymmetry {defect:.3e})"
        )
    M = inv_sqrt_spd(a1 @ a1.T + a2 @ a2.T)
    return M @ a1, M @ a2


@dataclass(frozen=True)
class IntervalProblem:
    """A matrix Schrodinger operator on [0, 1] with self-adjoint conditions.

    The boundary blocks are stored row-normalized, a1 a1^t + a2 a2^t = I,
    which fixes the frames below to be orthonormal.
    """

    potential: MatrixPotential
    alpha1: np.ndarray
    alpha2: np.ndarray
    beta1: np.ndarray
    beta2: np.ndarray

    @property
    def n(self) -> int:
        return self.alpha1.shape[0]


def interval_problem(potential, alpha1, alpha2, beta1, beta2) -> IntervalProblem:
    V = as_interval_potential(potential)
    a1, a2 = _normalize_rows(alpha1, alpha2, "left")
    b1, b2 = _normalize_rows(beta1, beta2, "right")
    if a1.shape[0] != V.n:
        raise DimensionMismatch(
            f"potential is {V.n} x {V.n} but boundary blocks are {a1.shape[0]} x {a1.shape[0]}"
        )
    if b1.shape[0] != V.n:
        raise DimensionMismatch("left and right boundary conditions differ in size")
    return IntervalProblem(V, _freeze(a1), _freeze(a2), _freeze(b1), _freeze(b2))


def boundary_frames(problem: IntervalProblem):
    """Frames of the two boundary-condition planes.

    The left plane {(y, y'): a1 y + a2 y' = 0} is spanned by the columns of
    (a2^t; -a1^t); same shape on the right.  Row normalization makes both
    orthonormal.  The complex factor of the right frame has a closed form in
    the boundary data, which is checked here as a consistency guard.
    """
    start = validate_frame(problem.alpha2.T, -problem.alpha1.T)
    target = validate_frame(problem.beta2.T, -problem.beta1.T)
    b1, b2 = problem.beta1, problem.beta2
    U = b2.T - 1j * b1.T
    lhs = (b2.T + 1j * b1.T) @ np.linalg.inv(U)
    rhs = b2.T @ b2 - b1.T @ b1 + 2j * (b2.T @ b1)
    if np.max(np.abs(lhs - rhs)) > 1e-8:
        raise NumericalFailure(
            "right boundary frame fails its closed-form factor identity "
            f"(defect {np.max(np.abs(lhs - rhs)):.3e})"
        )
    return (
        NormalizedFrame(_freeze(start.X), _freeze(start.Y)),
        NormalizedFrame(_freeze(target.X), _freeze(target.Y)),
    )


# ---------------------------------------------------------------------------
# frame evolution


def _inv_sqrt_batch(G):
    w, Q = np.linalg.eigh(G)
    if not np.all(np.isfinite(w)) or np.min(w) <= 0.0:
        raise IntegratorFailure("frame Gram matrix lost positivity")
    return (Q / np.sqrt(w)[..., None, :]) @ Q.swapaxes(-1, -2)


def _companion(V, lam, n):
    """Batched first-order coefficient [[0, I], [V - lam, 0]]."""
    m = lam.shape[0]
    A = np.zeros((m, 2 * n, 2 * n))
    A[:, :n, n:] = np.eye(n)
    A[:, n:, :n] = V[None, :, :] - lam[:, None, None] * np.eye(n)
    return A


def _one_step(V0, Vm, V1, lam, h, S, D):
    """One classical Runge-Kutta step plus Gram renormalization.

    S is the batched stacked frame (m, 2n, n); D, when given, carries the
    derivative with respect to the spectral shift and is renormalized with
    the same factor, which keeps the crossing-form pairing exact.
    """
    n = S.shape[-1]
    A0 = _companion(V0, lam, n)
    Am = _companion(Vm, lam, n)
    A1 = _companion(V1, lam, n)

    def shift_term(S):
        out = np.zeros_like(S)
        out[:, n:, :] = -S[:, :n, :]
        return out

    k1 = A0 @ S
    k2 = Am @ (S + 0.5 * h * k1)
    k3 = Am @ (S + 0.5 * h * k2)
    k4 = A1 @ (S + h * k3)
    S_new = S + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    D_new = None
    if D is not None:
        g1 = A0 @ D + shift_term(S)
        g2 = Am @ (D + 0.5 * h * g1) + shift_term(S + 0.5 * h * k1)
        g3 = Am @ (D + 0.5 * h * g2) + shift_term(S + 0.5 * h * k2)
        g4 = A1 @ (D + h * g3) + shift_term(S + h * k3)
        D_new = D + (h / 6.0) * (g1 + 2.0 * g2 + 2.0 * g3 + g4)
    G = S_new.swapaxes(-1, -2) @ S_new
    try:
        M = _inv_sqrt_batch(G)
    except np.linalg.LinAlgError as exc:
        raise IntegratorFailure(f"renormalization failed: {exc}") from None
    S_new = S_new @ M
    if D_new is not None:
        D_new = D_new @ M
    return S_new, D_new


def _record(S, n):
    """Turn a batched stacked state into frames, checking the invariant."""
    X = S[:, :n, :]
    Y = S[:, n:, :]
    skew = X.swapaxes(-1, -2) @ Y - Y.swapaxes(-1, -2) @ X
    defect = float(np.max(np.abs(skew)))
    if not np.isfinite(defect) or defect > DRIFT_TOL:
        raise IntegratorFailure(
            f"evolution drifted off the Lagrangian manifold (defect {defect:.3e})"
        )
    return [NormalizedFrame(_freeze(X[j]), _freeze(Y[j])) for j in range(S.shape[0])]


def _evolve_stops(problem, lams, targets, steps=DEFAULT_STEPS, with_derivative=False):
    """Evolve the left boundary frame from x = 0 to each target in turn.

    The step size is fixed at 1/steps regardless of the targets, so any two
    calls agree bitwise wherever their step sequences coincide; a target off
    the step grid gets one partial step that does not advance the running
    state.  Returns (frames, derivs): frames[k][j] is the frame at
    targets[k] for lams[j], and derivs[k] the matching (m, 2n, n) derivative
    block (None without with_derivative).
    """
    lam = np.atleast_1d(np.asarray(lams, dtype=float))
    if lam.ndim != 1 or not np.all(np.isfinite(lam)):
        raise DimensionMismatch("spectral shifts must be a finite 1-d array")
    targets = [float(t) for t in targets]
    if any(t < -1e-12 or t > 1.0 + 1e-12 for t in targets):
        raise DimensionMismatch("evolution targets must lie in [0, 1]")
    if any(b < a for a, b in zip(targets, targets[1:])):
        raise DimensionMismatch("evolution targets must be ascending")
    n = problem.n
    h = 1.0 / steps
    start, _ = boundary_frames(problem)
    S = np.broadcast_to(start.stacked, (lam.shape[0], 2 * n, n)).copy()
    D = np.zeros_like(S) if with_derivative else None
    pot = problem.potential
    idx = 0
    Vx = np.asarray(pot(0.0), dtype=float)
    frames_out, deriv_out = [], []
    for t in targets:
        full = min(int(np.floor(t * steps + 1e-9)), steps)
        while idx < full:
            x = idx * h
            Vm = np.asarray(pot(x + 0.5 * h), dtype=float)
            V1 = np.asarray(pot((idx + 1) * h), dtype=float)
            S, D = _one_step(Vx, Vm, V1, lam, h, S, D)
            Vx = V1
            idx += 1
        rem = t - full * h
        if rem > 1e-13:
            x = full * h
            Vm = np.asarray(pot(x + 0.5 * rem), dtype=float)
            V1 = np.asarray(pot(x + rem), dtype=float)
            S_rec, D_rec = _one_step(Vx, Vm, V1, lam, rem, S, D)
        else:
            S_rec, D_rec = S, D
        frames_out.append(_record(S_rec, n))
        deriv_out.append(None if D_rec is None else D_rec.copy())
    return frames_out, deriv_out


def evolve_frame(problem, lam, x, steps=DEFAULT_STEPS) -> NormalizedFrame:
    """The left boundary plane transported to x under shift lam."""
    frames, _ = _evolve_stops(problem, [lam], [x], steps)
    return frames[0][0]


class _FrameSweep:
    """Prefix-cached evolution at one fixed shift.

    Stores the running state at whole-step indices so that repeated queries
    (the bisection refiner asks for many nearby positions) do not restart
    from x = 0.  Every query reproduces bit for bit what a fresh
    _evolve_stops call would return, because the cached states sit on the
    same canonical step sequence.
    """

    def __init__(self, problem, lam, steps=DEFAULT_STEPS):
        self.problem = problem
        self.lam = np.array([float(lam)])
        self.steps = int(steps)
        self.h = 1.0 / steps
        start, _ = boundary_frames(problem)
        self._states = {0: (start.stacked[None, :, :].copy(),
                            np.asarray(problem.potential(0.0), dtype=float))}
        self._known = [0]

    def frame_at(self, t) -> NormalizedFrame:
        t = float(t)
        full = min(int(np.floor(t * self.steps + 1e-9)), self.steps)
        idx = self._known[bisect.bisect_right(self._known, full) - 1]
        S, Vx = self._states[idx]
        pot = self.problem.potential
        h = self.h
        while idx < full:
            x = idx * h
            Vm = np.asarray(pot(x + 0.5 * h), dtype=float)
            V1 = np.asarray(pot((idx + 1) * h), dtype=float)
            S, _ = _one_step(Vx, Vm, V1, self.lam, h, S, None)
            Vx = V1
            idx += 1
            self._states[idx] = (S, Vx)
            bisect.insort(self._known, idx)
        rem = t - full * h
        if rem > 1e-13:
            x = full * h
            Vm = np.asarray(pot(x + 0.5 * rem), dtype=float)
            V1 = np.asarray(pot(x + rem), dtype=float)
            S, _ = _one_step(Vx, Vm, V1, self.lam, rem, S, None)
        return _record(S, self.problem.n)[0]


def evolve_family(problem, lams, x, steps=DEFAULT_STEPS):
    """evolve_frame batched over an array of shifts (one shared sweep)."""
    frames, _ = _evolve_stops(problem, lams, [x], steps)
    return frames[0]


def evolve_with_shift_derivative(problem, lam, x, steps=DEFAULT_STEPS):
    """Frame at (x, lam) together with its derivative in the shift.

    The derivative is returned as (dX, dY) in the same gauge as the frame,
    ready for the crossing-form pairing.
    """
    frames, derivs = _evolve_stops(problem, [lam], [x], steps, with_derivative=True)
    n = problem.n
    D = derivs[0][0]
    return frames[0][0], (D[:n, :].copy(), D[n:, :].copy())


# ---------------------------------------------------------------------------
# boundary decomposition and corrections


@dataclass(frozen=True)
class BoundaryDecomposition:
    """Orthogonal splitting of one self-adjoint boundary condition.

    dirichlet_projection projects onto directions where the value is pinned
    to zero, neumann_projection onto directions where the derivative is, and
    the rest carries a symmetric slope relation y' = L y encoded by
    robin_operator on robin_basis.
    """

    dirichlet_projection: np.ndarray
    neumann_projection: np.ndarray
    robin_projection: np.ndarray
    robin_basis: np.ndarray
    robin_operator: np.ndarray

    @property
    def n(self) -> int:
        return self.dirichlet_projection.shape[0]

    @property
    def robin_matrix(self) -> np.ndarray:
        """The slope relation embedded as an n x n symmetric matrix."""
        return self.robin_basis @ self.robin_operator @ self.robin_basis.T

    @property
    def robin_norm(self) -> float:
        if self.robin_operator.size == 0:
            return 0.0
        return float(np.linalg.norm(self.robin_operator, 2))


def decompose_boundary_condition(a1, a2, tol=1e-8) -> BoundaryDecomposition:
    a1, a2 = _normalize_rows(a1, a2, "decomposed")
    n = a1.shape[0]
    UD = nullspace(a2)
    UN = nullspace(a1)
    PD = UD @ UD.T
    PN = UN @ UN.T
    if UD.size and UN.size and np.max(np.abs(UD.T @ UN)) > tol:
        raise InvalidBoundaryCondition(
            "value-pinned and derivative-pinned directions are not orthogonal"
        )
    PR = np.eye(n) - PD - PN
    eigs = np.linalg.eigvalsh(PR)
    if np.any(np.minimum(np.abs(eigs), np.abs(eigs - 1.0)) > tol):
        raise InvalidBoundaryCondition(
            "boundary condition does not split into value, slope and free parts"
        )
    r = int(round(float(np.sum(eigs > 0.5))))
    if r == 0:
        UR = np.zeros((n, 0))
        L = np.zeros((0, 0))
    else:
        UR = orthonormal_range(PR)
        if UR.shape[1] != r:
            raise InvalidBoundaryCondition("slope subspace has ambiguous dimension")
        M = UR.T @ a2.T
        N = -UR.T @ a1.T
        L = N @ np.linalg.pinv(M)
        if np.max(np.abs(L @ M - N)) > tol * max(1.0, np.linalg.norm(N, 2)):
            raise InvalidBoundaryCondition("slope relation is inconsistent")
        sym_defect = float(np.max(np.abs(L - L.T)))
        if sym_defect > tol * (1.0 + np.linalg.norm(L, 2)):
            raise InvalidBoundaryCondition(
                f"slope operator is not symmetric (defect {sym_defect:.3e})"
            )
        L = 0.5 * (L + L.T)
        small = np.min(np.abs(np.linalg.eigvalsh(L)))
        if small < tol * (1.0 + np.linalg.norm(L, 2)):
            warnings.warn(
                "slope operator is nearly singular; the split between slope "
                "and derivative-pinned directions is ill-conditioned",
                DegenerateRobinWarning,
                stacklevel=2,
            )
    dec = BoundaryDecomposition(
        _freeze(PD), _freeze(PN), _freeze(PR), _freeze(UR), _freeze(L)
    )
    # faithfulness: the rebuilt condition must cut out the same plane
    rebuilt = validate_frame((PN + PR).T, -(PD - dec.robin_matrix).T)
    original = validate_frame(a2.T, -a1.T)
    if distance(normalize_frame(rebuilt), normalize_frame(original)) > 1e-7:
        raise InvalidBoundaryCondition(
            "decomposition does not reproduce the boundary plane"
        )
    return dec


@dataclass(frozen=True)
class CorrectionTerms:
    """Finite-dimensional corrections at the shrunken corner of the box.

    difference_index counts negative eigenvalues of the slope-difference
    form on directions left free by both conditions; residual_index counts
    negative eigenvalues of the reduced second-order form on that form's
    kernel.  nondegenerate is False when the residual form itself has an
    (almost) zero eigenvalue, in which case the count is not stable.
    """

    difference_index: int
    residual_index: int
    nondegenerate: bool
    shared_basis: np.ndarray
    difference_form: np.ndarray
    kernel_basis: np.ndarray
    residual_form: np.ndarray


def correction_terms(problem: IntervalProblem, tol=1e-8) -> CorrectionTerms:
    d0 = decompose_boundary_condition(problem.alpha1, problem.alpha2, tol)
    d1 = decompose_boundary_condition(problem.beta1, problem.beta2, tol)
    n = problem.n
    UE = nullspace(
        np.vstack([d0.dirichlet_projection, d1.dirichlet_projection])
    )
    e = UE.shape[1]
    if e == 0:
        empty = np.zeros((n, 0))
        return CorrectionTerms(0, 0, True, _freeze(empty),
                               _freeze(np.zeros((0, 0))), _freeze(empty),
                               _freeze(np.zeros((0, 0))))
    G0 = d0.robin_matrix
    G1 = d1.robin_matrix
    B = UE.T @ (G0 - G1) @ UE
    B = 0.5 * (B + B.T)
    wB, QB = np.linalg.eigh(B)
    difference_index = int(np.sum(wB < -tol))
    kernel_cols = QB[:, np.abs(wB) <= tol]
    UQ = UE @ kernel_cols
    q = UQ.shape[1]
    if q == 0:
        residual = np.zeros((0, 0))
        residual_index = 0
        nondegenerate = True
    else:
        V0 = np.asarray(problem.potential(0.0), dtype=float)
        residual = UQ.T @ (V0 - G0 @ G0) @ UQ
        residual = 0.5 * (residual + residual.T)
        wR = np.linalg.eigvalsh(residual)
        residual_index = int(np.sum(wR < -tol))
        nondegenerate = bool(np.min(np.abs(wR)) > tol)
    if not nondegenerate:
        warnings.warn(
            "the reduced corner form has a (near-)zero eigenvalue; the "
            "corrected count is at the edge of its validity",
            DegenerateProblemWarning,
            stacklevel=2,
        )
    return CorrectionTerms(
        difference_index,
        residual_index,
        nondegenerate,
        _freeze(UE),
        _freeze(B),
        _freeze(kernel_cols),
        _freeze(residual),
    )


# ---------------------------------------------------------------------------
# the parameter-square boundary


def default_lambda_inf(problem: IntervalProblem, s0=DEFAULT_S0) -> float:
    """Shift depth guaranteeing a crossing-free far edge."""
    d0 = decompose_boundary_condition(problem.alpha1, problem.alpha2)
    d1 = decompose_boundary_condition(problem.beta1, problem.beta2)
    sup_v = problem.potential.sup_norm(0.0, 1.0)
    return sup_v + 4.0 * (1.0 + max(d0.robin_norm, d1.robin_norm)) / s0 + 10.0


@dataclass(frozen=True)
class MaslovBoxReport:
    """Everything computed while walking the parameter-square boundary."""

    morse_index: int
    edge_indices: dict
    corrections: CorrectionTerms
    s0: float
    lambda_inf: float
    steps: int
    edges: dict
    oracle_count: object = None
    oracle_match: object = None
    s0_stable: object = None

    def to_json_dict(self) -> dict:
        out = {
            "morse_index": int(self.morse_index),
            "edge_indices": {k: int(v) for k, v in self.edge_indices.items()},
            "corrections": {
                "difference_index": int(self.corrections.difference_index),
                "residual_index": int(self.corrections.residual_index),
            },
            "nondegenerate": bool(self.corrections.nondegenerate),
            "s0": float(self.s0),
            "lambda_inf": float(self.lambda_inf),
            "steps": int(self.steps),
            "edges": {k: v.to_json_dict() for k, v in self.edges.items()},
        }
        if self.oracle_count is not None:
            out["oracle_count"] = int(self.oracle_count)
            out["oracle_match"] = bool(self.oracle_match)
        if self.s0_stable is not None:
            out["s0_stable"] = bool(self.s0_stable)
        return out


def _s_grid(s0, steps, samples):
    """Ascending s values from s0 to 1 with interior points on the step grid."""
    lo = s0 * steps
    ii = np.round(np.linspace(lo, steps, samples + 1)).astype(int)
    interior = np.unique(ii[1:-1])
    interior = interior[(interior > lo + 0.5) & (interior < steps - 0.5)]
    return np.concatenate([[s0], interior / steps, [1.0]])


def maslov_box(
    problem: IntervalProblem,
    s0=DEFAULT_S0,
    lambda_inf=None,
    steps=DEFAULT_STEPS,
    edge_samples=DEFAULT_EDGE_SAMPLES,
    tol_phase=TOL_PHASE,
    max_refine=MAX_REFINE,
) -> MaslovBoxReport:
    """Walk the boundary of the parameter rectangle and count crossings.

    The rectangle is [-lambda_inf, 0] x [s0, 1], traversed bottom (shift
    rising at s = s0), right (s rising at shift 0), top (shift falling at
    s = 1), left (s falling at the far shift).  The four signed counts must
    sum to zero; the Morse index is minus the right-edge count plus the two
    corner corrections.
    """
    if not 0.0 < s0 < 1.0:
        raise DimensionMismatch(f"s0 must lie in (0, 1), got {s0}")
    corrections = correction_terms(problem)
    if lambda_inf is None:
        lambda_inf = default_lambda_inf(problem, s0)
    lambda_inf = float(lambda_inf)
    if lambda_inf <= 0.0:
        raise DimensionMismatch("lambda_inf must be positive")
    _, target = boundary_frames(problem)

    lam_grid = np.linspace(-lambda_inf, 0.0, edge_samples + 1)
    bottom_frames = evolve_family(problem, lam_grid, s0, steps)
    bottom = path_from_frames(
        lam_grid,
        [(f, target) for f in bottom_frames],
        refiner=lambda t: (evolve_frame(problem, t, s0, steps), target),
    )

    s_vals = _s_grid(s0, steps, edge_samples)
    sweep_zero = _FrameSweep(problem, 0.0, steps)
    right = path_from_frames(
        s_vals,
        [(sweep_zero.frame_at(s), target) for s in s_vals],
        refiner=lambda s: (sweep_zero.frame_at(s), target),
    )

    u_grid = np.linspace(0.0, lambda_inf, edge_samples + 1)
    top_frames = evolve_family(problem, -u_grid, 1.0, steps)
    top = path_from_frames(
        u_grid,
        [(f, target) for f in top_frames],
        refiner=lambda u: (evolve_frame(problem, -u, 1.0, steps), target),
    )

    sweep_deep = _FrameSweep(problem, -lambda_inf, steps)
    left = path_from_frames(
        1.0 - s_vals[::-1],
        [(sweep_deep.frame_at(s), target) for s in s_vals[::-1]],
        refiner=lambda u: (sweep_deep.frame_at(1.0 - u), target),
    )

    results = {}
    for name, path in zip(EDGE_NAMES, (bottom, right, top, left)):
        results[name] = maslov_index(path, tol_phase=tol_phase, max_refine=max_refine)
    indices = {k: v.index for k, v in results.items()}
    total = sum(indices.values())
    if total != 0:
        raise BoxNotClosed(
            "edge counts do not cancel around the rectangle: "
            + ", ".join(f"{k}={v}" for k, v in indices.items())
        )
    morse = -indices["right"] + corrections.difference_index + corrections.residual_index
    return MaslovBoxReport(
        morse_index=morse,
        edge_indices=indices,
        corrections=corrections,
        s0=float(s0),
        lambda_inf=lambda_inf,
        steps=int(steps),
        edges=results,
    )


def morse_index_interval(
    problem: IntervalProblem,
    s0=DEFAULT_S0,
    lambda_inf=None,
    steps=DEFAULT_STEPS,
    edge_samples=DEFAULT_EDGE_SAMPLES,
    tol_phase=TOL_PHASE,
    max_refine=MAX_REFINE,
    verify=False,
    check_s0=False,
) -> MaslovBoxReport:
    """Number of negative eigenvalues of the interval operator.

    verify runs the independent finite-difference count and records the
    comparison; check_s0 repeats the computation with s0 halved and records
    whether the answer is stable.
    """
    report = maslov_box(
        problem, s0, lambda_inf, steps, edge_samples, tol_phase, max_refine
    )
    if check_s0:
        again = maslov_box(
            problem, s0 / 2.0, lambda_inf, steps, edge_samples, tol_phase, max_refine
        )
        report = replace(report, s0_stable=bool(again.morse_index == report.morse_index))
    if verify:
        from .oracle import fd_morse_interval

        count = fd_morse_interval(problem)
        report = replace(
            report,
            oracle_count=int(count),
            oracle_match=bool(count == report.morse_index),
        )
    return report
