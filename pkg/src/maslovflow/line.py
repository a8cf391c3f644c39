"""Morse indices of matrix Schrodinger operators on the real line.

The potential approaches constant limits with nonnegative spectrum at both
ends, so the essential spectrum starts at 0 and the operator's negative
eigenvalues are isolated.  At a shift lam < 0 the equation has exponential
dichotomies; the plane of solutions decaying to the left, transported
across a window [-L, L] and paired against the plane decaying to the
right, counts eigenvalues below the shift.  Running that pairing along a
shelf just below zero gives the Morse index; an optional rectangle in the
(x, shift) parameters closes up to zero as a consistency check.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    BoxNotClosed,
    DimensionMismatch,
    InvalidPotential,
    LambdaNotBelowSpectrum,
    TruncationInsufficient,
)
from .flow import MAX_REFINE, TOL_PHASE, maslov_index, path_from_frames
from .frames import NormalizedFrame, _freeze, normalize_frame, validate_frame
from .interval import _one_step, _record
from .potentials import LinePotential

DEFAULT_STEPS_PER_UNIT = 200
DEFAULT_EDGE_SAMPLES = 400
DEFAULT_L_CAP = 40.0
TAIL_TOL = 1e-8
SHELF_NAMES = ("shelf", "far_end", "deep", "near_end")


def _tail_weight(potential, L):
    """Sampled integral of (1 + |x|) |V - limit| over [L, 2L], both sides."""
    worst = 0.0
    for sign, limit in ((1.0, potential.limit_plus), (-1.0, potential.limit_minus)):
        xs = L + (np.arange(257) + 0.5) * (L / 257.0)
        vals = [
            (1.0 + x) * np.linalg.norm(potential(sign * x) - limit, 2) for x in xs
        ]
        worst = max(worst, float(np.mean(vals) * L))
    return worst


@dataclass(frozen=True)
class LineProblem:
    """A line operator together with its truncation half-width."""

    potential: LinePotential
    L: float

    @property
    def n(self) -> int:
        return self.potential.n


def line_problem(potential: LinePotential, L="auto") -> LineProblem:
    """Validate the standing hypotheses and fix the window half-width.

    Both asymptotic limits must be positive semidefinite; otherwise the
    essential spectrum dips below zero and the count is meaningless.  With
    L="auto" the half-width grows until the weighted tail of the potential
    beyond it is negligible, capped at 40.
    """
    if not isinstance(potential, LinePotential):
        raise InvalidPotential("a line problem needs a potential with limits")
    for name, limit in (("left", potential.limit_minus), ("right", potential.limit_plus)):
        w = np.linalg.eigvalsh(np.asarray(limit, dtype=float))
        if w[0] < -1e-10 * max(1.0, abs(w[-1])):
            raise InvalidPotential(
                f"{name} asymptotic limit has a negative eigenvalue ({w[0]:.6g}); "
                "the essential spectrum would reach below zero"
            )
    if L == "auto":
        L = DEFAULT_L_CAP
        for trial in np.arange(2.0, DEFAULT_L_CAP + 1e-9, 2.0):
            if _tail_weight(potential, float(trial)) < TAIL_TOL:
                L = float(trial)
                break
    L = float(L)
    if L <= 0.0:
        raise DimensionMismatch(f"window half-width must be positive, got {L}")
    return LineProblem(potential, L)


@dataclass(frozen=True)
class AsymptoticFrame:
    """Eigenbasis and decay rates of one constant-coefficient end."""

    basis: np.ndarray
    rates: np.ndarray
    frame: NormalizedFrame


def asymptotic_frames(problem: LineProblem, lam):
    """Frames of the solution planes decaying at -inf and at +inf.

    In the eigenbasis R of the limit matrix, solutions decaying to the left
    grow like exp(+sqrt(nu - lam) x) and those decaying to the right like
    exp(-sqrt(nu - lam) x); the frames pair each eigenvector with its slope.
    """
    lam = float(lam)
    out = []
    for limit, sign in ((problem.potential.limit_minus, 1.0),
                        (problem.potential.limit_plus, -1.0)):
        nu, R = np.linalg.eigh(np.asarray(limit, dtype=float))
        if np.min(nu - lam) <= 0.0:
            raise LambdaNotBelowSpectrum(
                f"shift {lam} is not below the essential spectrum floor {nu[0]:.6g}"
            )
        mu = sign * np.sqrt(nu - lam)
        raw = validate_frame(R, R * mu[None, :])
        out.append(AsymptoticFrame(_freeze(R), _freeze(mu), normalize_frame(raw)))
    return out[0], out[1]


# ---------------------------------------------------------------------------
# transport across the window


def _line_evolve_stops(problem, lams, targets, steps_per_unit=DEFAULT_STEPS_PER_UNIT):
    """Move the left-decaying planes from -L to each target in turn.

    Mirrors the interval engine: fixed step 2L/total, partial steps only as
    non-advancing flushes, Gram renormalization every step."""
    lam = np.atleast_1d(np.asarray(lams, dtype=float))
    L = problem.L
    n = problem.n
    total = max(1, int(round(2.0 * L * steps_per_unit)))
    h = 2.0 * L / total
    targets = [float(t) for t in targets]
    if any(t < -L - 1e-9 or t > L + 1e-9 for t in targets):
        raise DimensionMismatch("targets must lie inside the window")
    if any(b < a for a, b in zip(targets, targets[1:])):
        raise DimensionMismatch("targets must be ascending")
    starts = [asymptotic_frames(problem, lv)[0].frame for lv in lam]
    S = np.stack([f.stacked for f in starts])
    pot = problem.potential
    idx = 0
    Vx = np.asarray(pot(-L), dtype=float)
    frames_out = []
    for t in targets:
        full = min(int(np.floor((t + L) / h + 1e-9)), total)
        while idx < full:
            x = -L + idx * h
            Vm = np.asarray(pot(x + 0.5 * h), dtype=float)
            V1 = np.asarray(pot(-L + (idx + 1) * h), dtype=float)
            S, _ = _one_step(Vx, Vm, V1, lam, h, S, None)
            Vx = V1
            idx += 1
        rem = t - (-L + full * h)
        if rem > 1e-13:
            x = -L + full * h
            Vm = np.asarray(pot(x + 0.5 * rem), dtype=float)
            V1 = np.asarray(pot(x + rem), dtype=float)
            S_rec, _ = _one_step(Vx, Vm, V1, lam, rem, S, None)
        else:
            S_rec = S
        frames_out.append(_record(S_rec, n))
    return frames_out


def evolve_line_frame(problem, lam, x, steps_per_unit=DEFAULT_STEPS_PER_UNIT):
    """The left-decaying plane transported to x under shift lam."""
    return _line_evolve_stops(problem, [lam], [x], steps_per_unit)[0][0]


class _LineSweep:
    """Prefix-cached transport at one fixed shift (same canonical steps)."""

    def __init__(self, problem, lam, steps_per_unit=DEFAULT_STEPS_PER_UNIT):
        self.problem = problem
        self.lam = np.array([float(lam)])
        L = problem.L
        self.total = max(1, int(round(2.0 * L * steps_per_unit)))
        self.h = 2.0 * L / self.total
        start = asymptotic_frames(problem, float(lam))[0].frame
        self._states = {0: (start.stacked[None, :, :].copy(),
                            np.asarray(problem.potential(-L), dtype=float))}
        self._known = [0]

    def frame_at(self, t) -> NormalizedFrame:
        L = self.problem.L
        t = float(t)
        full = min(int(np.floor((t + L) / self.h + 1e-9)), self.total)
        idx = self._known[bisect.bisect_right(self._known, full) - 1]
        S, Vx = self._states[idx]
        pot = self.problem.potential
        h = self.h
        while idx < full:
            x = -L + idx * h
            Vm = np.asarray(pot(x + 0.5 * h), dtype=float)
            V1 = np.asarray(pot(-L + (idx + 1) * h), dtype=float)
            S, _ = _one_step(Vx, Vm, V1, self.lam, h, S, None)
            Vx = V1
            idx += 1
            self._states[idx] = (S, Vx)
            bisect.insort(self._known, idx)
        rem = t - (-L + full * h)
        if rem > 1e-13:
            x = -L + full * h
            Vm = np.asarray(pot(x + 0.5 * rem), dtype=float)
            V1 = np.asarray(pot(x + rem), dtype=float)
            S, _ = _one_step(Vx, Vm, V1, self.lam, rem, S, None)
        return _record(S, self.problem.n)[0]


def pair_unitary_at(problem, x, lam, steps_per_unit=DEFAULT_STEPS_PER_UNIT):
    """The pair unitary of (transported left plane, right-decaying plane)."""
    from .unitary import pair_unitary

    plus = asymptotic_frames(problem, lam)[1].frame
    return pair_unitary(evolve_line_frame(problem, lam, x, steps_per_unit), plus)


# ---------------------------------------------------------------------------
# the count


@dataclass(frozen=True)
class LineReport:
    """Result of the line count, with optional rectangle and cross-checks."""

    morse_index: int
    shelf_indices: dict
    L: float
    delta: float
    lambda_inf: object
    steps_per_unit: int
    edges: dict
    oracle_count: object = None
    oracle_match: object = None
    truncation_stable: object = None

    def to_json_dict(self) -> dict:
        out = {
            "morse_index": int(self.morse_index),
            "shelf_indices": {k: int(v) for k, v in self.shelf_indices.items()},
            "L": float(self.L),
            "delta": float(self.delta),
            "steps_per_unit": int(self.steps_per_unit),
            "edges": {k: v.to_json_dict() for k, v in self.edges.items()},
        }
        if self.lambda_inf is not None:
            out["lambda_inf"] = float(self.lambda_inf)
        if self.oracle_count is not None:
            out["oracle_count"] = int(self.oracle_count)
            out["oracle_match"] = bool(self.oracle_match)
        if self.truncation_stable is not None:
            out["truncation_stable"] = bool(self.truncation_stable)
        return out


def default_delta(problem: LineProblem) -> float:
    """A shift strictly between the negative spectrum and zero.

    Estimated from the finite-difference spectrum: half the magnitude of
    the least-negative eigenvalue, but never above a small floor tied to
    the potential scale."""
    from .oracle import line_eigenvalues

    sup = problem.potential.sup_norm(-problem.L, problem.L)
    cap = 1e-3 * (1.0 + sup)
    eigs = line_eigenvalues(problem.potential, problem.L, k=8)
    neg = eigs[eigs < -1e-8 * (1.0 + sup)]
    if neg.size == 0:
        return cap
    return float(min(cap, 0.5 * np.min(np.abs(neg))))


def _shelf_path(problem, lam, samples, steps_per_unit):
    """The pair path along fixed shift lam, x ascending across the window."""
    L = problem.L
    sweep = _LineSweep(problem, lam, steps_per_unit)
    idx = np.unique(np.round(np.linspace(0, sweep.total, samples + 1)).astype(int))
    ts = -L + idx * sweep.h
    plus = asymptotic_frames(problem, lam)[1].frame
    return path_from_frames(
        ts,
        [(sweep.frame_at(t), plus) for t in ts],
        refiner=lambda t: (sweep.frame_at(t), plus),
    )


def morse_index_line(
    problem: LineProblem,
    delta=None,
    lambda_inf=None,
    samples=DEFAULT_EDGE_SAMPLES,
    steps_per_unit=DEFAULT_STEPS_PER_UNIT,
    tol_phase=TOL_PHASE,
    max_refine=MAX_REFINE,
    full_box=False,
    verify=False,
    check_truncation=False,
) -> LineReport:
    """Number of negative eigenvalues of the line operator.

    The count is minus the signed crossing count along the shelf at
    shift -delta.  full_box adds the other three sides of the rectangle
    [-L, L] x [-lambda_inf, -delta] and checks that everything cancels;
    verify compares with the finite-difference oracle; check_truncation
    repeats the shelf with the window doubled and raises
    TruncationInsufficient if the answer moves.
    """
    if delta is None:
        delta = default_delta(problem)
    delta = float(delta)
    if delta <= 0.0:
        raise DimensionMismatch("delta must be positive")
    L = problem.L

    edges = {}
    edges["shelf"] = maslov_index(
        _shelf_path(problem, -delta, samples, steps_per_unit),
        tol_phase=tol_phase, max_refine=max_refine,
    )
    indices = {"shelf": edges["shelf"].index}
    morse = -indices["shelf"]

    if full_box:
        if lambda_inf is None:
            lambda_inf = problem.potential.sup_norm(-L, L) + 10.0
        lambda_inf = float(lambda_inf)
        if lambda_inf <= delta:
            raise DimensionMismatch("lambda_inf must exceed delta")

        u_grid = np.linspace(delta, lambda_inf, samples + 1)
        far_frames = _line_evolve_stops(problem, -u_grid, [L], steps_per_unit)[0]

        def far_pair(u):
            plus = asymptotic_frames(problem, -u)[1].frame
            return (evolve_line_frame(problem, -u, L, steps_per_unit), plus)

        far = path_from_frames(
            u_grid,
            [(f, asymptotic_frames(problem, -u)[1].frame)
             for f, u in zip(far_frames, u_grid)],
            refiner=far_pair,
        )
        edges["far_end"] = maslov_index(far, tol_phase=tol_phase, max_refine=max_refine)

        deep_sweep = _LineSweep(problem, -lambda_inf, steps_per_unit)
        idx = np.unique(np.round(np.linspace(0, deep_sweep.total, samples + 1)).astype(int))
        xs = -L + idx * deep_sweep.h
        plus_deep = asymptotic_frames(problem, -lambda_inf)[1].frame
        deep = path_from_frames(
            L - xs[::-1],
            [(deep_sweep.frame_at(x), plus_deep) for x in xs[::-1]],
            refiner=lambda u: (deep_sweep.frame_at(L - u), plus_deep),
        )
        edges["deep"] = maslov_index(deep, tol_phase=tol_phase, max_refine=max_refine)

        def near_pair(lam):
            minus, plus = asymptotic_frames(problem, lam)
            return (minus.frame, plus.frame)

        lam_grid = np.linspace(-lambda_inf, -delta, samples + 1)
        near = path_from_frames(
            lam_grid, [near_pair(lv) for lv in lam_grid], refiner=near_pair
        )
        edges["near_end"] = maslov_index(near, tol_phase=tol_phase, max_refine=max_refine)

        indices = {k: v.index for k, v in edges.items()}
        if sum(indices.values()) != 0:
            raise BoxNotClosed(
                "shelf counts do not cancel around the rectangle: "
                + ", ".join(f"{k}={v}" for k, v in indices.items())
            )

    report = LineReport(
        morse_index=morse,
        shelf_indices=indices,
        L=float(L),
        delta=delta,
        lambda_inf=None if not full_box else float(lambda_inf),
        steps_per_unit=int(steps_per_unit),
        edges=edges,
    )

    if check_truncation:
        wider = LineProblem(problem.potential, 2.0 * L)
        again = maslov_index(
            _shelf_path(wider, -delta, samples, steps_per_unit),
            tol_phase=tol_phase, max_refine=max_refine,
        )
        if -again.index != morse:
            raise TruncationInsufficient(
                f"count moved from {morse} to {-again.index} when the window "
                f"was widened from {L} to {2 * L}"
            )
        report = replace(report, truncation_stable=True)

    if verify:
        from .oracle import fd_morse_line

        count = fd_morse_line(problem.potential, L)
        report = replace(
            report, oracle_count=int(count), oracle_match=bool(count == morse)
        )
    return report
