"""Frames for Lagrangian subspaces of R^{2n}.

A Lagrangian subspace is an n-dimensional subspace of R^{2n} on which the
symplectic form omega(u, v) = (J u, v) vanishes, where

    J = [[0, -I], [I, 0]].

We represent a subspace by a frame, a 2n x n matrix [[X], [Y]] of full rank
whose columns span it.  The Lagrangian condition on the frame reads

    X^t Y - Y^t X = 0.

The frame is only determined up to right multiplication by an invertible
n x n matrix; every quantity computed downstream (projections, distances,
unitary invariants) is checked to be invariant under that change.

A normalized frame additionally satisfies X^t X + Y^t Y = I, i.e. the
columns of the stacked matrix are orthonormal.  Any frame can be
normalized by right-multiplying with the inverse square root of its Gram
matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._numeric import inv_sqrt_spd
from .errors import DimensionMismatch, NotLagrangian, NumericalFailure, RankDeficient

TOL_FRAME = 1e-9
TOL_RANK = 1e-10


def symplectic_j(n):
    """The standard symplectic matrix J = [[0, -I], [I, 0]] of size 2n."""
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = -np.eye(n)
    J[n:, :n] = np.eye(n)
    return J


@dataclass(frozen=True)
class LagrangianFrame:
    """A validated frame (X; Y) for a Lagrangian subspace of R^{2n}."""

    X: np.ndarray
    Y: np.ndarray

    @property
    def n(self) -> int:
        return self.X.shape[1]

    @property
    def stacked(self) -> np.ndarray:
        """The 2n x n matrix [[X], [Y]]."""
        return np.vstack([self.X, self.Y])

    def to_dict(self) -> dict:
        return {"n": self.n, "X": self.X.tolist(), "Y": self.Y.tolist()}


@dataclass(frozen=True)
class NormalizedFrame(LagrangianFrame):
    """A Lagrangian frame with orthonormal stacked columns."""


def _freeze(A):
    A = np.array(A, dtype=float)
    A.setflags(write=False)
    return A


def validate_frame(X, Y, tol=TOL_FRAME, rank_rtol=TOL_RANK) -> LagrangianFrame:
    """Check shapes, rank and isotropy; return the frame object.

    Raises DimensionMismatch for shape problems, RankDeficient when the
    stacked matrix has a singular value below rank_rtol * sigma_max, and
    NotLagrangian when || X^t Y - Y^t X || exceeds tol (scaled by the
    squared frame norm).
    """
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    if X.ndim != 2 or Y.ndim != 2:
        raise DimensionMismatch("frame blocks must be 2-d arrays")
    if X.shape != Y.shape:
        raise DimensionMismatch(f"X has shape {X.shape}, Y has shape {Y.shape}")
    n = X.shape[1]
    if X.shape[0] != n:
        raise DimensionMismatch(f"frame blocks must be square, got {X.shape}")
    if not (np.all(np.isfinite(X)) and np.all(np.isfinite(Y))):
        raise NumericalFailure("frame contains non-finite entries")
    F = np.vstack([X, Y])
    s = np.linalg.svd(F, compute_uv=False)
    if s[-1] <= rank_rtol * s[0]:
        raise RankDeficient(
            f"frame is rank deficient (singular values {s[0]:.3e} .. {s[-1]:.3e})"
        )
    skew = X.T @ Y - Y.T @ X
    if np.max(np.abs(skew)) > tol * max(1.0, s[0] ** 2):
        raise NotLagrangian(
            f"isotropy defect {np.max(np.abs(skew)):.3e} exceeds tolerance"
        )
    return LagrangianFrame(_freeze(X), _freeze(Y))


def normalize_frame(frame: LagrangianFrame) -> NormalizedFrame:
    """Right-multiply by (X^t X + Y^t Y)^{-1/2} to get orthonormal columns."""
    G = frame.X.T @ frame.X + frame.Y.T @ frame.Y
    M = inv_sqrt_spd(G)
    return NormalizedFrame(_freeze(frame.X @ M), _freeze(frame.Y @ M))


def frame_from_subspace(basis) -> LagrangianFrame:
    """Build a frame from any 2n x n matrix whose columns span the subspace."""
    basis = np.asarray(basis, dtype=float)
    n = basis.shape[1]
    if basis.shape[0] != 2 * n:
        raise DimensionMismatch(f"expected a 2n x n basis, got {basis.shape}")
    return validate_frame(basis[:n], basis[n:])


def projection(frame: LagrangianFrame) -> np.ndarray:
    """Orthogonal projection of R^{2n} onto the subspace, as a 2n x 2n matrix.

    P = F (F^t F)^{-1} F^t does not depend on the choice of frame.
    """
    F = frame.stacked
    if isinstance(frame, NormalizedFrame):
        return F @ F.T
    M = inv_sqrt_spd(F.T @ F)
    FN = F @ M
    return FN @ FN.T


def distance(f1: LagrangianFrame, f2: LagrangianFrame) -> float:
    """Gap metric between two Lagrangian subspaces.

    Operator 2-norm of the difference of the orthogonal projections; lies
    in [0, 1] and vanishes iff the subspaces coincide.
    """
    if f1.n != f2.n:
        raise DimensionMismatch("frames live in different dimensions")
    return float(np.linalg.norm(projection(f1) - projection(f2), 2))


def pair_distance(pair_a, pair_b) -> float:
    """Product metric on pairs: sqrt(d(l1,m1)^2 + d(l2,m2)^2)."""
    d1 = distance(pair_a[0], pair_b[0])
    d2 = distance(pair_a[1], pair_b[1])
    return float(np.hypot(d1, d2))


@dataclass(frozen=True)
class ConjugationOperator:
    """The reflection tau = 2P - I through a Lagrangian subspace.

    tau is symmetric, involutive and anticommutes with J; it fixes the
    subspace and negates its orthogonal complement.
    """

    matrix: np.ndarray

    @property
    def n(self) -> int:
        return self.matrix.shape[0] // 2


def conjugation(frame: LagrangianFrame) -> ConjugationOperator:
    return ConjugationOperator(_freeze(2.0 * projection(frame) - np.eye(2 * frame.n)))


def random_lagrangian(n, seed) -> NormalizedFrame:
    """Draw a random Lagrangian subspace of R^{2n}.

    Takes a Haar-distributed n x n unitary U and returns the frame
    (Re U; Im U).  Unitarity of U gives both the isotropy identity and
    normalization exactly, up to rounding.
    """
    rng = np.random.default_rng(seed)
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, R = np.linalg.qr(Z)
    d = np.diagonal(R)
    Q = Q * (d / np.abs(d))
    return NormalizedFrame(_freeze(Q.real), _freeze(Q.imag))


def horizontal_frame(n) -> NormalizedFrame:
    """The subspace y = 0, frame (I; 0)."""
    return NormalizedFrame(_freeze(np.eye(n)), _freeze(np.zeros((n, n))))


def dirichlet_frame(n) -> NormalizedFrame:
    """The subspace x = 0, frame (0; I)."""
    return NormalizedFrame(_freeze(np.zeros((n, n))), _freeze(np.eye(n)))


def line_frame(angle) -> NormalizedFrame:
    """The line spanned by (cos angle, sin angle) in R^2 (n = 1)."""
    return NormalizedFrame(
        _freeze([[np.cos(angle)]]), _freeze([[np.sin(angle)]])
    )


def frame_to_dict(frame: LagrangianFrame) -> dict:
    return frame.to_dict()


def frame_from_dict(data) -> LagrangianFrame:
    try:
        n = int(data["n"])
        X = np.asarray(data["X"], dtype=float)
        Y = np.asarray(data["Y"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise DimensionMismatch(f"malformed frame record: {exc}") from exc
    if X.shape != (n, n):
        raise DimensionMismatch(f"frame record X has shape {X.shape}, n = {n}")
    return validate_frame(X, Y)
