"""Rotation speed of the pair unitary and crossing forms.

For a C^1 path of pairs with frames (X1(t); Y1(t)), (X2(t); Y2(t)) the
pair unitary obeys

    dW~/dt = i W~ Omega,

with Omega the Hermitian matrix

    Omega = W2^* Omega_1 W2 + Omega_2,
    Omega_1 =  2 ((X1 - iY1)^{-1})^* (X1^t Y1' - Y1^t X1') (X1 - iY1)^{-1},
    Omega_2 = -2 ((X2 + iY2)^{-1})^* (X2^t Y2' - Y2^t X2') (X2 + iY2)^{-1},
    W2 = (X2 - iY2)(X2 + iY2)^{-1}.

Definiteness of Omega gives monotone rotation: Omega > 0 drives every
eigenvalue phase counterclockwise, Omega < 0 clockwise.  Omega is
invariant under any smooth change of frames.

At a parameter where the subspaces intersect, the crossing form on
v = (v1; v2) in l1 n l2 is

    Gamma(v) = (A1 u, u) - (A2 w, w),   A_k = Xk^t Yk' - Yk^t Xk',

where u, w are the frame coordinates of v in the two frames.  The same
form is computed by the Hermitian matrix

    Omega_P = 2 (X1+iY1) M1^2 A1 M1^2 (X1^t - iY1^t)
            - 2 (X2+iY2) M2^2 A2 M2^2 (X2^t - iY2^t),
    M_k^2 = (Xk^t Xk + Yk^t Yk)^{-1},

through Gamma(v) = (1/2) vt^* Omega_P vt with vt = v1 + i v2.  The sign
of Gamma at a simple crossing is the direction of the passage.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._numeric import nullspace
from .errors import DimensionMismatch, NoCrossing, NumericalFailure
from .frames import LagrangianFrame

TOL_HERMITIAN = 1e-8


def _as_blocks(d, n):
    dX = np.asarray(d[0], dtype=float)
    dY = np.asarray(d[1], dtype=float)
    if dX.shape != (n, n) or dY.shape != (n, n):
        raise DimensionMismatch(
            f"frame derivative blocks must be {n} x {n}, got {dX.shape}, {dY.shape}"
        )
    return dX, dY


def _pairing(frame: LagrangianFrame, d):
    """The symmetric matrix X^t Y' - Y^t X' of a frame path."""
    dX, dY = _as_blocks(d, frame.n)
    A = frame.X.T @ dY - frame.Y.T @ dX
    return 0.5 * (A + A.T)


@dataclass(frozen=True)
class RotationGenerator:
    """Hermitian angular-velocity matrix of the pair unitary."""

    matrix: np.ndarray
    first_part: np.ndarray
    second_part: np.ndarray

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


def rotation_generator(l1, d1, l2, d2) -> RotationGenerator:
    """Omega for the pair path, from frames and their derivatives."""
    if l1.n != l2.n:
        raise DimensionMismatch("pair members have different n")
    A1 = _pairing(l1, d1)
    A2 = _pairing(l2, d2)
    B1 = np.linalg.inv(l1.X - 1j * l1.Y)
    B2 = np.linalg.inv(l2.X + 1j * l2.Y)
    O1 = 2.0 * B1.conj().T @ A1 @ B1
    O2 = -2.0 * B2.conj().T @ A2 @ B2
    W2 = (l2.X - 1j * l2.Y) @ B2
    O = W2.conj().T @ O1 @ W2 + O2
    defect = float(np.max(np.abs(O - O.conj().T)))
    if defect > TOL_HERMITIAN * max(1.0, float(np.max(np.abs(O)))):
        raise NumericalFailure(f"rotation generator lost hermiticity ({defect:.3e})")
    O = 0.5 * (O + O.conj().T)
    return RotationGenerator(O, O1, O2)


def rotation_direction(gen: RotationGenerator, tol=1e-8) -> str:
    """"ccw" / "cw" when the generator is definite, else "indefinite"."""
    w = gen.eigenvalues()
    if w[0] > tol:
        return "ccw"
    if w[-1] < -tol:
        return "cw"
    return "indefinite"


def intersection_basis(l1: LagrangianFrame, l2: LagrangianFrame, rtol=1e-8) -> np.ndarray:
    """Orthonormal columns spanning l1 n l2 in R^{2n}."""
    if l1.n != l2.n:
        raise DimensionMismatch("pair members have different n")
    N = nullspace(np.hstack([l1.stacked, -l2.stacked]), rtol=rtol)
    if N.shape[1] == 0:
        return np.zeros((2 * l1.n, 0))
    V = l1.stacked @ N[: l1.n]
    Q, _ = np.linalg.qr(V)
    return Q


@dataclass(frozen=True)
class CrossingForm:
    """A symmetric bilinear form on the intersection, in a given basis."""

    matrix: np.ndarray
    basis: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def signature(self, tol=1e-10):
        """(positive, negative, null) eigenvalue counts."""
        w = np.linalg.eigvalsh(self.matrix)
        return (
            int(np.sum(w > tol)),
            int(np.sum(w < -tol)),
            int(np.sum(np.abs(w) <= tol)),
        )


def _frame_coordinates(frame: LagrangianFrame, vectors):
    """Coordinates u with F u = v for columns v already lying in the span."""
    F = frame.stacked
    G = F.T @ F
    return np.linalg.solve(G, F.T @ vectors)


def crossing_form(l1, d1, l2, basis=None, rtol=1e-8) -> CrossingForm:
    """Form of the moving subspace l1(t) against the fixed target l2.

    Gamma(v) = (A1 u, u) on l1 n l2, with u the l1-frame coordinates of
    v.  Raises NoCrossing when the intersection is trivial.
    """
    if basis is None:
        basis = intersection_basis(l1, l2, rtol=rtol)
    if basis.shape[1] == 0:
        raise NoCrossing("the two subspaces are transversal here")
    A1 = _pairing(l1, d1)
    U = _frame_coordinates(l1, basis)
    B = U.T @ A1 @ U
    return CrossingForm(0.5 * (B + B.T), basis)


def pair_crossing_form(l1, d1, l2, d2, basis=None, rtol=1e-8) -> CrossingForm:
    """Two-sided form: moving l1 against l2(t*) minus moving l2 against l1(t*)."""
    if basis is None:
        basis = intersection_basis(l1, l2, rtol=rtol)
    if basis.shape[1] == 0:
        raise NoCrossing("the two subspaces are transversal here")
    B1 = crossing_form(l1, d1, l2, basis=basis).matrix
    B2 = crossing_form(l2, d2, l1, basis=basis).matrix
    return CrossingForm(B1 - B2, basis)


def crossing_generator(l1, d1, l2, d2) -> np.ndarray:
    """The Hermitian n x n matrix Omega_P computing the pair form.

    For v = (v1; v2) in the intersection and vt = v1 + i v2,
    (1/2) vt^* Omega_P vt equals the pair crossing form at v.
    """
    if l1.n != l2.n:
        raise DimensionMismatch("pair members have different n")

    def part(frame, d, sign):
        A = _pairing(frame, d)
        M2 = np.linalg.inv(frame.X.T @ frame.X + frame.Y.T @ frame.Y)
        U = frame.X + 1j * frame.Y
        return sign * 2.0 * U @ M2 @ A @ M2 @ U.conj().T

    O = part(l1, d1, +1.0) + part(l2, d2, -1.0)
    return 0.5 * (O + O.conj().T)
