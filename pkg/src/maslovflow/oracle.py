"""Independent finite-difference counts used to cross-check the flow results.

The interval oracle discretizes the quadratic form of the operator rather
than the eigenvalue ODE: piecewise-linear stiffness, trapezoid mass and
potential, boundary slope terms added at the end nodes, and value-pinned
directions removed by restriction.  That route shares no code with the
frame evolution, which is the point.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from ._numeric import nullspace
from .errors import DiscretizationUnstable, EigensolverFailure
from .interval import IntervalProblem, decompose_boundary_condition

DEFAULT_NODES = 1000


def _interval_form_matrix(problem: IntervalProblem, N):
    """Scaled symmetric banded matrix of the discretized quadratic form.

    Returns (ab, dim) with ab in upper banded storage, mass-scaled so that
    its eigenvalues approximate the operator's."""
    n = problem.n
    h = 1.0 / N
    xs = np.arange(N + 1) * h
    d0 = decompose_boundary_condition(problem.alpha1, problem.alpha2)
    d1 = decompose_boundary_condition(problem.beta1, problem.beta2)

    main = np.full(N + 1, 2.0)
    main[0] = main[-1] = 1.0
    T = sp.diags([-np.ones(N), main, -np.ones(N)], [-1, 0, 1]) / h
    A = sp.kron(T, sp.eye(n), format="lil")

    weights = np.full(N + 1, h)
    weights[0] = weights[-1] = 0.5 * h
    blocks = [w * np.asarray(problem.potential(x), dtype=float)
              for x, w in zip(xs, weights)]
    A = (A + sp.block_diag(blocks, format="csr")).tolil()

    A[:n, :n] += d0.robin_matrix
    A[-n:, -n:] -= d1.robin_matrix
    A = A.tocsr()

    C0 = nullspace(d0.dirichlet_projection)
    C1 = nullspace(d1.dirichlet_projection)
    reducer = sp.block_diag(
        [C0, sp.eye((N - 1) * n), C1], format="csr"
    )
    A = (reducer.T @ A @ reducer).tocsr()

    mass = np.concatenate(
        [np.full(C0.shape[1], weights[0]),
         np.repeat(weights[1:-1], n),
         np.full(C1.shape[1], weights[-1])]
    )
    scale = 1.0 / np.sqrt(mass)
    A = sp.diags(scale) @ A @ sp.diags(scale)

    dim = A.shape[0]
    width = 2 * n - 1
    ab = np.zeros((width + 1, dim))
    for k in range(width + 1):
        diag = A.diagonal(k)
        ab[width - k, k:] = diag
    return ab, dim


def _count_below(ab, cutoff):
    """Number of eigenvalues of the banded symmetric matrix below cutoff."""
    width = ab.shape[0] - 1
    radius = np.abs(ab[width]) * 0.0
    for k in range(1, width + 1):
        row = np.abs(ab[width - k])
        radius[k:] += row[k:]
        radius[:-k] += row[k:]
    floor = float(np.min(ab[width] - radius)) - 1.0
    if floor >= cutoff:
        return 0
    try:
        w = scipy.linalg.eig_banded(
            ab, lower=False, eigvals_only=True, select="v",
            select_range=(floor, cutoff),
        )
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover - defensive
        raise EigensolverFailure(f"banded eigensolver failed: {exc}") from None
    return int(w.shape[0])


def interval_form_eigenvalues(problem: IntervalProblem, N=DEFAULT_NODES, k=10):
    """Lowest k eigenvalues of the discretized interval operator."""
    ab, dim = _interval_form_matrix(problem, N)
    w = scipy.linalg.eig_banded(
        ab, lower=False, eigvals_only=True, select="i",
        select_range=(0, min(k, dim) - 1),
    )
    return w


def fd_morse_interval(problem: IntervalProblem, N=DEFAULT_NODES, tol_eig=None) -> int:
    """Count negative eigenvalues by direct discretization.

    The count is computed at N and 2N nodes and must agree, otherwise the
    discretization has not settled and DiscretizationUnstable is raised.
    """
    if tol_eig is None:
        tol_eig = 1e-8 * (1.0 + problem.potential.sup_norm(0.0, 1.0))
    counts = []
    for nodes in (N, 2 * N):
        ab, _ = _interval_form_matrix(problem, nodes)
        counts.append(_count_below(ab, -tol_eig))
    if counts[0] != counts[1]:
        raise DiscretizationUnstable(
            f"negative-eigenvalue count moved from {counts[0]} to {counts[1]} "
            f"when the grid was refined from {N} to {2 * N} nodes"
        )
    return counts[0]


# ---------------------------------------------------------------------------
# the real line, by Dirichlet truncation


def _line_matrix(potential, L, N):
    """Banded matrix for the Dirichlet truncation onto [-L, L]."""
    n = potential.n
    h = 2.0 * L / N
    xs = -L + np.arange(1, N) * h
    T = sp.diags([-np.ones(N - 2), np.full(N - 1, 2.0), -np.ones(N - 2)],
                 [-1, 0, 1]) / h**2
    A = sp.kron(T, sp.eye(n), format="csr")
    blocks = [np.asarray(potential(x), dtype=float) for x in xs]
    A = A + sp.block_diag(blocks, format="csr")
    dim = A.shape[0]
    width = 2 * n - 1
    ab = np.zeros((width + 1, dim))
    for k in range(width + 1):
        ab[width - k, k:] = A.diagonal(k)
    return ab, dim


def line_eigenvalues(potential, L, N=None, k=10):
    """Lowest k eigenvalues of the truncated line operator."""
    if N is None:
        N = max(1200, int(100 * L))
    ab, dim = _line_matrix(potential, L, N)
    w = scipy.linalg.eig_banded(
        ab, lower=False, eigvals_only=True, select="i",
        select_range=(0, min(k, dim) - 1),
    )
    return w


def fd_morse_line(potential, L, N=None, tol_eig=None) -> int:
    """Negative-eigenvalue count for the line operator, by truncation.

    Computed on [-L, L] and [-2L, 2L] at matching resolution; disagreement
    raises DiscretizationUnstable.
    """
    if tol_eig is None:
        tol_eig = 1e-8 * (1.0 + potential.sup_norm(-L, L))
    counts = []
    for ell, nodes in ((L, None), (2.0 * L, None)):
        nn = max(1200, int(100 * ell)) if N is None else (N if ell == L else 2 * N)
        ab, _ = _line_matrix(potential, ell, nn)
        counts.append(_count_below(ab, -tol_eig))
    if counts[0] != counts[1]:
        raise DiscretizationUnstable(
            f"negative-eigenvalue count moved from {counts[0]} to {counts[1]} "
            f"when the window was widened from {L} to {2 * L}"
        )
    return counts[0]


# ---------------------------------------------------------------------------
# subspace intersections, the dumb way


def brute_intersection_dim(f1, f2, tol_rank=1e-10) -> int:
    """dim of the intersection of two frame spans, straight from an SVD."""
    stacked = np.hstack([f1.stacked, -f2.stacked])
    return nullspace(stacked, rtol=tol_rank).shape[1]
