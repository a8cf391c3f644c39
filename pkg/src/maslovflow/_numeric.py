"""Small dense linear-algebra helpers used throughout the package."""

from __future__ import annotations

import numpy as np

from .errors import NumericalFailure

# Inverses of Gram matrices are refused beyond this condition number.
COND_LIMIT = 1e12


def inv_sqrt_spd(G, cond_limit=COND_LIMIT):
    """Inverse square root of a symmetric positive definite matrix.

    Uses the eigendecomposition of the symmetrized input.  Raises
    NumericalFailure if the spectrum is not safely positive or the
    condition number exceeds ``cond_limit``.
    """
    G = 0.5 * (G + G.T)
    w, V = np.linalg.eigh(G)
    if w[0] <= 0.0 or w[-1] / w[0] > cond_limit:
        raise NumericalFailure(
            "Gram matrix is singular or too ill-conditioned "
            f"(eigenvalue range [{w[0]:.3e}, {w[-1]:.3e}])"
        )
    return (V / np.sqrt(w)) @ V.T


def nullspace(A, rtol=1e-10):
    """Orthonormal basis of ker(A) as columns.

    Treats singular values below rtol * sigma_max (or rtol for a zero
    matrix) as zero.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    _, s, Vh = np.linalg.svd(A)
    cut = rtol * (s[0] if s.size and s[0] > 0 else 1.0)
    rank = int(np.sum(s > cut))
    return Vh[rank:].T.copy()


def orthonormal_range(A, rtol=1e-10):
    """Orthonormal basis of the column space of A."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    U, s, _ = np.linalg.svd(A, full_matrices=False)
    cut = rtol * (s[0] if s.size and s[0] > 0 else 1.0)
    rank = int(np.sum(s > cut))
    return U[:, :rank].copy()
