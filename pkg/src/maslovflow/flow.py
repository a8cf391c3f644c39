"""Spectral flow of the pair unitary and the Maslov index.

A path of Lagrangian pairs t -> (l1(t), l2(t)) induces a path of n x n
unitaries W~(t).  Intersections of the two subspaces happen exactly when
an eigenvalue of W~(t) sits at -1, and the Maslov index is the signed
count of eigenvalue passages through -1:

  * an eigenvalue crossing -1 counterclockwise contributes +1,
  * crossing clockwise contributes -1,
  * at the path endpoints, a counterclockwise arrival counts +1, a
    clockwise departure counts -1, and the other two endpoint events
    count 0.

Operationally the index is a sum over a partition of the path of counts
k(t, eps) of eigenvalue phases inside the half-open arc [pi, pi + eps)
for a per-subinterval radius eps chosen so that membership in the arc can
only change through a genuine passage; the telescoping differences of k
reproduce the signed count above, and both schemes are computed and
compared on every call.

Eigenvalue phases are tracked between consecutive samples by minimum
total circular displacement (a linear assignment problem) and the grid
is bisected until every matched displacement is below pi/2 and the
matrix itself moves by less than MATRIX_LIMIT per step.  The matrix
condition matters: a fast sweep can alias, looking small to any
endpoint matching of phases, but whenever it also rotates eigenvectors
or changes phase separations it remains visible in || W~(t') - W~(t) ||.
Purely synchronized winding with frozen eigenvectors is invisible to
any endpoint test; resolving it is the sampling density's job.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import (
    AmbiguousCrossing,
    DimensionMismatch,
    EigensolverFailure,
    EndpointsNotFixed,
    JunctionMismatch,
    PathTooCoarse,
    RefinementExhausted,
)
from .frames import LagrangianFrame, line_frame, pair_distance
from .unitary import PairUnitary, pair_unitary

TOL_PHASE = 1e-6
MAX_REFINE = 40
MOTION_LIMIT = 0.5 * np.pi
MATRIX_LIMIT = 0.5
RHO_MAX = 0.95

TWO_PI = 2.0 * np.pi


def _wrap(x):
    """Map to [-pi, pi)."""
    return (x + np.pi) % TWO_PI - np.pi


def unit_eigenvalue_phases(w) -> np.ndarray:
    """Sorted eigenvalue phases in [0, 2pi) of a unitary matrix."""
    mat = w.matrix if isinstance(w, PairUnitary) else np.asarray(w)
    try:
        lam = np.linalg.eigvals(mat)
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(str(exc)) from exc
    mod = np.abs(lam)
    if np.max(np.abs(mod - 1.0)) > 1e-8:
        raise EigensolverFailure(
            f"eigenvalues left the unit circle by {np.max(np.abs(mod - 1.0)):.3e}"
        )
    return np.sort(np.angle(lam / mod) % TWO_PI)


@dataclass(frozen=True)
class LagrangianPairPath:
    """Sampled path of Lagrangian pairs with an optional exact refiner.

    grid is strictly increasing; pairs[i] corresponds to grid[i].  The
    refiner, when present, evaluates the exact pair at any parameter and
    is what makes grid bisection possible.
    """

    grid: tuple
    pairs: tuple
    refiner: object = None

    @property
    def n(self) -> int:
        return self.pairs[0][0].n

    @property
    def t_start(self) -> float:
        return self.grid[0]

    @property
    def t_end(self) -> float:
        return self.grid[-1]


def path_from_frames(grid, pairs, refiner=None, check_continuity=True) -> LagrangianPairPath:
    grid = [float(t) for t in grid]
    if len(grid) != len(pairs):
        raise DimensionMismatch("grid and pair list have different lengths")
    if len(grid) < 2:
        raise DimensionMismatch("a path needs at least two samples")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise DimensionMismatch("grid must be strictly increasing")
    n = pairs[0][0].n
    for l1, l2 in pairs:
        if l1.n != n or l2.n != n:
            raise DimensionMismatch("inconsistent n along the path")
    if check_continuity and refiner is None:
        for i, (a, b) in enumerate(zip(pairs, pairs[1:])):
            rho = pair_distance(a, b)
            if rho > RHO_MAX:
                raise PathTooCoarse(
                    f"consecutive samples {i}, {i + 1} are {rho:.3f} apart "
                    "and no refiner is available"
                )
    return LagrangianPairPath(tuple(grid), tuple(pairs), refiner)


def sample_path(refiner, a, b, samples) -> LagrangianPairPath:
    """Evaluate a pair-valued map on a uniform grid over [a, b]."""
    grid = np.linspace(a, b, samples)
    pairs = [refiner(t) for t in grid]
    return path_from_frames(grid, pairs, refiner=refiner, check_continuity=False)


def arnold_path(a=-np.pi / 4, b=np.pi / 4, samples=41) -> LagrangianPairPath:
    """The normalization example: the line (cos t, sin t) against (1, 0).

    The pair unitary is -e^{-2it}, a single clockwise phase; the index
    over [-pi/4, pi/4] is -1.
    """
    fixed = line_frame(0.0)
    return sample_path(lambda t: (fixed, line_frame(t)), a, b, samples)


def reverse_path(p: LagrangianPairPath, new_start=None) -> LagrangianPairPath:
    """Traverse the path backwards, reparametrized to start at new_start.

    Defaults to starting where p ends, so concatenate(p, reverse_path(p))
    is a closed loop.
    """
    a, b = p.t_start, p.t_end
    if new_start is None:
        new_start = b
    shift = new_start + b  # pair at parameter t is p at (shift - t)
    grid = tuple(shift - t for t in reversed(p.grid))
    pairs = tuple(reversed(p.pairs))
    refiner = None
    if p.refiner is not None:
        pr = p.refiner
        refiner = lambda t: pr(shift - t)
    return LagrangianPairPath(grid, pairs, refiner)


def concatenate(p: LagrangianPairPath, q: LagrangianPairPath, tol=1e-8) -> LagrangianPairPath:
    """Join two paths sharing an endpoint pair."""
    if abs(p.t_end - q.t_start) > tol * max(1.0, abs(p.t_end)):
        raise JunctionMismatch(
            f"parameter junction differs: {p.t_end} vs {q.t_start}"
        )
    rho = pair_distance(p.pairs[-1], q.pairs[0])
    if rho > tol:
        raise JunctionMismatch(f"junction pairs are {rho:.3e} apart")
    t_mid = p.t_end
    pr, qr = p.refiner, q.refiner
    refiner = None
    if pr is not None and qr is not None:
        refiner = lambda t: pr(t) if t <= t_mid else qr(t)
    grid = p.grid + q.grid[1:]
    pairs = p.pairs + q.pairs[1:]
    return LagrangianPairPath(grid, pairs, refiner)


@dataclass(frozen=True)
class PhaseTrace:
    """Aligned eigenvalue phases of W~ along a (possibly refined) grid.

    phases[i, j] is track j's phase in [0, 2pi) at grid[i]; rows are the
    multiset of eigenvalue phases at that sample, columns are continuous
    tracks.
    """

    grid: np.ndarray
    phases: np.ndarray

    @property
    def n(self) -> int:
        return self.phases.shape[1]

    def to_csv(self, target) -> None:
        close = False
        if isinstance(target, (str, bytes)):
            target = open(target, "w", newline="")
            close = True
        try:
            writer = csv.writer(target)
            writer.writerow(["t"] + [f"phase_{j + 1}" for j in range(self.n)])
            for t, row in zip(self.grid, self.phases):
                writer.writerow([repr(float(t))] + [repr(float(p)) for p in row])
        finally:
            if close:
                target.close()

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        self.to_csv(buf)
        return buf.getvalue()


def trace_from_csv(source) -> PhaseTrace:
    close = False
    if isinstance(source, (str, bytes)):
        source = open(source, newline="")
        close = True
    try:
        rows = list(csv.reader(source))
    finally:
        if close:
            source.close()
    header, body = rows[0], rows[1:]
    if not header or header[0] != "t":
        raise DimensionMismatch("phase trace csv must start with a 't' column")
    data = np.array([[float(v) for v in row] for row in body])
    return PhaseTrace(data[:, 0].copy(), data[:, 1:].copy())


@dataclass(frozen=True)
class Crossing:
    """One cluster of eigenvalue passages through -1."""

    t: float
    multiplicity: int
    direction: str  # "ccw", "cw" or "mixed"
    net: int

    def to_dict(self) -> dict:
        return {
            "t": float(self.t),
            "multiplicity": self.multiplicity,
            "direction": self.direction,
            "net": self.net,
        }


@dataclass(frozen=True)
class MaslovResult:
    index: int
    crossings: tuple
    trace: PhaseTrace

    @property
    def grid(self) -> np.ndarray:
        return self.trace.grid

    def to_json_dict(self) -> dict:
        return {
            "index": int(self.index),
            "t_start": float(self.grid[0]),
            "t_end": float(self.grid[-1]),
            "grid_size": int(len(self.grid)),
            "crossings": [c.to_dict() for c in self.crossings],
        }


class _Samples:
    """Mutable sample store used during grid bisection."""

    def __init__(self, path: LagrangianPairPath):
        self.ts = list(path.grid)
        self.mats = [pair_unitary(*p).matrix for p in path.pairs]
        self.phases = [unit_eigenvalue_phases(m) for m in self.mats]
        self.depth = [0] * (len(self.ts) - 1)
        self.refiner = path.refiner

    def split(self, i):
        tm = 0.5 * (self.ts[i] + self.ts[i + 1])
        if not (self.ts[i] < tm < self.ts[i + 1]):
            raise RefinementExhausted(
                f"bisection hit floating-point resolution at t = {self.ts[i]!r}"
            )
        mat = pair_unitary(*self.refiner(tm)).matrix
        self.ts.insert(i + 1, tm)
        self.mats.insert(i + 1, mat)
        self.phases.insert(i + 1, unit_eigenvalue_phases(mat))
        d = self.depth[i] + 1
        self.depth[i] = d
        self.depth.insert(i + 1, d)


def _match_step(prev, nxt):
    """Assign next-sample phases to previous ones, minimizing circular moves.

    Returns (perm, delta): nxt[perm[k]] continues prev[k], with wrapped
    displacement delta[k] in [-pi, pi).
    """
    diff = _wrap(nxt[None, :] - prev[:, None])
    _, cols = linear_sum_assignment(np.abs(diff))
    return cols, diff[np.arange(len(prev)), cols]


def _snap(u, tol):
    out = np.array(u, dtype=float)
    out[np.abs(out) <= tol] = 0.0
    return out


def _arc_radius(p, q, tol):
    """Pick the arc radius eps for one step, or None if infeasible.

    p, q: snapped phase offsets from pi at the two samples (q on the
    lifted line).  Touching phases are those at or passing the marker;
    their nonnegative endpoints must land inside [0, eps), while a phase
    staying on the positive side must not straddle the arc boundary.
    """
    touching = (p == 0.0) | (q == 0.0) | (np.sign(p) * np.sign(q) < 0)
    off = ~touching
    # primary rule: half the closest off-marker approach, floored
    if np.any(off):
        approach = np.minimum(np.abs(p[off]), np.abs(q[off]))
        eps = max(10.0 * tol, 0.5 * float(np.min(approach)))
    else:
        eps = np.pi / 4.0
    eps = min(eps, 0.49 * np.pi)

    need_below = []  # touching endpoints that must satisfy value < eps
    for pk, qk, tk in zip(p, q, touching):
        if tk:
            if pk >= 0.0:
                need_below.append(pk)
            if qk >= 0.0:
                need_below.append(qk)
    lower = max(need_below) if need_below else 0.0
    avoid = [
        (min(pk, qk), max(pk, qk))
        for pk, qk, tk in zip(p, q, touching)
        if not tk and pk > 0.0 and qk > 0.0
    ]

    def feasible(e):
        if not (lower < e < 0.5 * np.pi):
            return False
        return all(not (lo < e <= hi) for lo, hi in avoid)

    if feasible(eps):
        return eps
    # fall back to scanning the gaps between endpoint values
    marks = sorted({lower, 0.49 * np.pi} | {m for ab in avoid for m in ab if lower < m < 0.5 * np.pi})
    for a, b in zip(marks, marks[1:]):
        cand = 0.5 * (a + b)
        if feasible(cand):
            return cand
    return None


def _refine(path: LagrangianPairPath, tol_phase, max_refine) -> _Samples:
    """Bisect until every step is resolvable.

    Four triggers: a matched displacement of pi/2 or more, a matrix
    displacement of MATRIX_LIMIT or more (fast motion can alias the
    matched displacements while still moving the matrix), drift above
    tol_phase while both endpoints sit in the snap band (a crossing the
    grid cannot certify), and failure to find a valid arc radius.
    """
    store = _Samples(path)
    i = 0
    while i < len(store.ts) - 1:
        prev, nxt = store.phases[i], store.phases[i + 1]
        _, delta = _match_step(prev, nxt)
        u_prev = prev - np.pi
        p = _snap(u_prev, tol_phase)
        q = _snap_lifted(u_prev + delta, tol_phase)

        in_band_wiggle = np.any((p == 0.0) & (q == 0.0) & (np.abs(delta) > tol_phase))
        too_fast = (
            np.max(np.abs(delta)) >= MOTION_LIMIT
            or np.linalg.norm(store.mats[i + 1] - store.mats[i], 2) >= MATRIX_LIMIT
        )
        eps = None if (too_fast or in_band_wiggle) else _arc_radius(p, q, tol_phase)

        if not too_fast and not in_band_wiggle and eps is not None:
            i += 1
            continue
        if store.depth[i] >= max_refine or store.refiner is None:
            span = f"[{store.ts[i]!r}, {store.ts[i + 1]!r}]"
            if in_band_wiggle:
                raise AmbiguousCrossing(
                    f"phase drifts inside the snap band on {span}; "
                    "crossing side cannot be certified at this tolerance"
                )
            raise RefinementExhausted(
                f"cannot resolve phase motion on {span} "
                f"(depth {store.depth[i]}, refiner {'set' if store.refiner else 'absent'})"
            )
        store.split(i)
    return store


def _snap_lifted(q_lift, tol):
    """Snap lifted offsets whose wrapped value is within tol of zero."""
    out = np.array(q_lift, dtype=float)
    out[np.abs(_wrap(out)) <= tol] = 0.0
    return out


def _contribution(p, q):
    """Signed count for one phase over one step from snapped offsets."""
    if p < 0.0 <= q:
        return 1
    if q < 0.0 <= p:
        return -1
    return 0


def track_eigenvalue_paths(path: LagrangianPairPath, tol_phase=TOL_PHASE,
                           max_refine=MAX_REFINE) -> PhaseTrace:
    """Aligned phase tracks of W~ along the path, refining where needed."""
    store = _refine(path, tol_phase, max_refine)
    return _assemble(store, tol_phase)[0]


def _assemble(store: _Samples, tol_phase):
    """Build the aligned trace and the per-step signed data in one pass."""
    ts = np.array(store.ts)
    m = len(ts)
    n = len(store.phases[0])
    aligned = np.empty((m, n))
    aligned[0] = store.phases[0]
    direct = 0
    arc = 0
    events = []  # (t_estimate, sign, step_index)
    for i in range(m - 1):
        prev = aligned[i]
        prev_sorted_idx = np.argsort(prev)
        prev_sorted = prev[prev_sorted_idx]
        perm, delta_sorted = _match_step(prev_sorted, np.sort(store.phases[i + 1]))
        # scatter back into track order
        delta = np.empty(n)
        delta[prev_sorted_idx] = delta_sorted
        nxt_sorted = np.sort(store.phases[i + 1])
        aligned[i + 1, prev_sorted_idx] = nxt_sorted[perm]

        u_prev = prev - np.pi
        p = _snap(u_prev, tol_phase)
        q = _snap_lifted(u_prev + delta, tol_phase)
        eps = _arc_radius(p, q, tol_phase)
        if eps is None:
            raise RefinementExhausted("arc radius vanished after refinement")
        k_prev = int(np.sum((p >= 0.0) & (p < eps)))
        k_next = int(np.sum((q >= 0.0) & (q < eps)))
        arc += k_next - k_prev
        for j in range(n):
            c = _contribution(p[j], q[j])
            direct += c
            if c != 0:
                if p[j] == 0.0:
                    t_star = ts[i]
                elif q[j] == 0.0:
                    t_star = ts[i + 1]
                else:
                    t_star = ts[i] - u_prev[j] * (ts[i + 1] - ts[i]) / delta[j]
                events.append((float(t_star), c, i))
    if arc != direct:
        raise AmbiguousCrossing(
            f"arc count {arc} disagrees with signed crossing count {direct}"
        )
    return PhaseTrace(ts, aligned % TWO_PI), direct, events


def _cluster(events, ts):
    """Group passage events that belong to one crossing."""
    if not events:
        return ()
    span = ts[-1] - ts[0]
    events = sorted(events)
    groups = [[events[0]]]
    for ev in events[1:]:
        last = groups[-1][-1]
        same_step = ev[2] == last[2]
        close = abs(ev[0] - last[0]) <= 1e-9 * max(1.0, span)
        if same_step or close:
            groups[-1].append(ev)
        else:
            groups.append([ev])
    out = []
    for g in groups:
        signs = {s for _, s, _ in g}
        direction = "ccw" if signs == {1} else "cw" if signs == {-1} else "mixed"
        net = sum(s for _, s, _ in g)
        t_mean = float(np.mean([t for t, _, _ in g]))
        out.append(Crossing(t_mean, len(g), direction, net))
    return tuple(out)


def maslov_index(path: LagrangianPairPath, tol_phase=TOL_PHASE,
                 max_refine=MAX_REFINE) -> MaslovResult:
    """Maslov index of the pair path, with crossing records and the trace."""
    store = _refine(path, tol_phase, max_refine)
    trace, index, events = _assemble(store, tol_phase)
    return MaslovResult(index, _cluster(events, trace.grid), trace)


def signed_crossing_sum(trace: PhaseTrace, tol_phase=TOL_PHASE) -> int:
    """Direct signed count of passages through pi on an aligned trace.

    Works on the already-aligned columns; used to cross-check the arc
    construction inside maslov_index.
    """
    total = 0
    for j in range(trace.n):
        col = trace.phases[:, j]
        u = col - np.pi
        for i in range(len(col) - 1):
            delta = _wrap(u[i + 1] - u[i])
            p = u[i] if abs(u[i]) > tol_phase else 0.0
            lifted = u[i] + delta
            q = lifted if abs(_wrap(lifted)) > tol_phase else 0.0
            total += _contribution(p, q)
    return total


def homotopy_check(family, a, b, s_samples=10, t_samples=60,
                   endpoint_tol=1e-8, tol_phase=TOL_PHASE):
    """Verify the index is constant over an endpoint-fixed family.

    family(s, t) returns the pair at slice s, parameter t, for s in
    [0, 1].  Raises EndpointsNotFixed if an endpoint pair moves by more
    than endpoint_tol in the pair metric.  Returns (all_equal, indices).
    """
    s_grid = np.linspace(0.0, 1.0, s_samples)
    ref_a = family(0.0, a)
    ref_b = family(0.0, b)
    indices = []
    for s in s_grid:
        da = pair_distance(family(s, a), ref_a)
        db = pair_distance(family(s, b), ref_b)
        if max(da, db) > endpoint_tol:
            raise EndpointsNotFixed(
                f"slice s = {s:.3f} moved an endpoint by {max(da, db):.3e}"
            )
        p = sample_path(lambda t, s=s: family(s, t), a, b, t_samples)
        indices.append(maslov_index(p, tol_phase=tol_phase).index)
    return len(set(indices)) == 1, indices
