"""Unitary matrices attached to a pair of Lagrangian subspaces.

For normalized frames (X1; Y1), (X2; Y2) the matrices U_k = X_k + i Y_k are
unitary, and the pair is encoded by the n x n unitary

    W~ = -(X1 + iY1)(X1 - iY1)^{-1} (X2 - iY2)(X2 + iY2)^{-1}
       = -(U1 U1^t) (U2 U2^t)^*.

W~ does not depend on the choice of frames, and its eigenvalue -1 detects
intersection:  dim ker(W~ + I) = dim(l1 intersect l2).  Swapping the two
arguments conjugates the spectrum.

Two larger companions carry the same information.  The reflection product

    W = -(2P1 - I)(2P2 - I)

is real orthogonal, commutes with J, and satisfies W = [[A, -C], [C, A]]
with A + iC = W~; its real kernel at -1 is (l1 n l2) + J(l1 n l2), twice
the intersection.  The 4n x 4n swap matrix

    WW = [[0, I - 2P1], [I - 2P2, 0]]

is orthogonal and commutes with diag(J, -J); the values -lambda^2 over its
spectrum reproduce the spectrum of W, and its multiplicity at -1 equals
W's.  Both companions expose a ``structured_spectrum`` that restricts them
to the +i eigenspace of their complex structure; for W this reproduces W~
exactly, and for WW it yields 2n half-speed eigenvalues moving through -1
in the same direction as W~'s.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NumericalFailure
from .frames import LagrangianFrame, NormalizedFrame, normalize_frame, projection

TOL_UNITARY = 1e-10
TOL_PHASE = 1e-6


def _unitary_defect(M):
    n = M.shape[0]
    return float(np.linalg.norm(M.conj().T @ M - np.eye(n), 2))


def _symmetric_unitary(frame: LagrangianFrame) -> np.ndarray:
    """U U^t for the frame's unitary U = X + iY (frame-choice invariant)."""
    if not isinstance(frame, NormalizedFrame):
        frame = normalize_frame(frame)
    U = frame.X + 1j * frame.Y
    return U @ U.T


@dataclass(frozen=True)
class PairUnitary:
    """The n x n unitary invariant of an ordered Lagrangian pair."""

    matrix: np.ndarray
    first_factor: np.ndarray   # -matrix = first_factor @ second_factor
    second_factor: np.ndarray

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def pair_unitary(l1: LagrangianFrame, l2: LagrangianFrame) -> PairUnitary:
    """Compute W~ for the ordered pair (l1, l2)."""
    if l1.n != l2.n:
        raise DimensionMismatch("pair members have different n")
    S1 = _symmetric_unitary(l1)
    S2h = _symmetric_unitary(l2).conj().T
    W = -S1 @ S2h
    defect = _unitary_defect(W)
    if defect > TOL_UNITARY:
        raise NumericalFailure(f"pair unitary defect {defect:.3e} exceeds tolerance")
    W = np.array(W)
    W.setflags(write=False)
    return PairUnitary(W, S1, S2h)


def intersection_dim(l1, l2, tol_phase=TOL_PHASE) -> int:
    """dim(l1 intersect l2), read off the -1 eigenvalues of W~."""
    lam = np.linalg.eigvals(pair_unitary(l1, l2).matrix)
    return int(np.sum(np.abs(np.angle(-lam)) <= tol_phase))


def det_squared(l1, l2) -> complex:
    """det W~, a unit-modulus frame-invariant of the pair."""
    d = complex(np.linalg.det(pair_unitary(l1, l2).matrix))
    return d / abs(d)


@dataclass(frozen=True)
class SouriauMap:
    """The real orthogonal reflection product W = -(2P1 - I)(2P2 - I)."""

    matrix: np.ndarray

    @property
    def n(self) -> int:
        return self.matrix.shape[0] // 2

    def complex_form(self) -> np.ndarray:
        """The n x n unitary A + iC from the block structure [[A, -C], [C, A]].

        Equals the pair unitary of the same ordered pair; the block
        structure is verified to TOL_UNITARY.
        """
        n = self.n
        A = self.matrix[:n, :n]
        B = self.matrix[:n, n:]
        C = self.matrix[n:, :n]
        D = self.matrix[n:, n:]
        defect = max(np.max(np.abs(D - A)), np.max(np.abs(B + C)))
        if defect > TOL_UNITARY:
            raise NumericalFailure(
                f"reflection product lost its complex structure ({defect:.3e})"
            )
        return A + 1j * C


def souriau_map(l1: LagrangianFrame, l2: LagrangianFrame) -> SouriauMap:
    if l1.n != l2.n:
        raise DimensionMismatch("pair members have different n")
    n = l1.n
    I = np.eye(2 * n)
    W = -(2.0 * projection(l1) - I) @ (2.0 * projection(l2) - I)
    W.setflags(write=False)
    return SouriauMap(W)


@dataclass(frozen=True)
class DirectSumSouriau:
    """The 4n x 4n orthogonal swap matrix [[0, I - 2P1], [I - 2P2, 0]]."""

    matrix: np.ndarray

    @property
    def n(self) -> int:
        return self.matrix.shape[0] // 4

    def structured_spectrum(self) -> np.ndarray:
        """Eigenvalues on the +i eigenspace of the diag(J, -J) structure.

        Returns 2n unit-modulus values; -lambda^2 over them covers the
        structured spectrum of the reflection product, and their signed
        flow through -1 matches the pair unitary's.
        """
        n = self.n
        Q = np.zeros((4 * n, 2 * n), dtype=complex)
        for k in range(n):
            Q[k, k] = 1.0 / np.sqrt(2.0)
            Q[n + k, k] = -1j / np.sqrt(2.0)
            Q[2 * n + k, n + k] = 1.0 / np.sqrt(2.0)
            Q[3 * n + k, n + k] = 1j / np.sqrt(2.0)
        S = Q.conj().T @ self.matrix @ Q
        resid = float(np.linalg.norm(self.matrix @ Q - Q @ S, 2))
        if resid > TOL_UNITARY:
            raise NumericalFailure(
                f"swap matrix does not preserve the structure chart ({resid:.3e})"
            )
        return np.linalg.eigvals(S)


def direct_sum_souriau(l1: LagrangianFrame, l2: LagrangianFrame) -> DirectSumSouriau:
    if l1.n != l2.n:
        raise DimensionMismatch("pair members have different n")
    n = l1.n
    I = np.eye(2 * n)
    A = I - 2.0 * projection(l1)
    B = I - 2.0 * projection(l2)
    W = np.zeros((4 * n, 4 * n))
    W[: 2 * n, 2 * n :] = A
    W[2 * n :, : 2 * n] = B
    W.setflags(write=False)
    return DirectSumSouriau(W)


def folded_phases(matrix) -> np.ndarray:
    """Eigenvalue phases folded to [0, pi], sorted.

    Phases theta and 2pi - theta are identified, so a real matrix with
    conjugate-symmetric spectrum folds onto each phase twice.
    """
    lam = np.linalg.eigvals(matrix)
    lam = lam / np.abs(lam)
    theta = np.angle(lam)  # (-pi, pi]
    return np.sort(np.abs(theta))
