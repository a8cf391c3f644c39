#!/usr/bin/env python3
"""Reading intersection dimensions off a unitary's spectrum.

For two Lagrangian planes in R^{2n}, the n x n pair unitary has -1 as an
eigenvalue exactly as often as the planes share a direction.  This script
plants intersections of known dimension, recovers them two independent
ways, and shows how the same information reappears (doubled) in the real
orthogonal companion and in the doubled swap companion's spectrum.

Run:  python3 demos/pair_spectra.py
"""

import numpy as np

from maslovflow import (
    NormalizedFrame,
    brute_intersection_dim,
    direct_sum_souriau,
    intersection_dim,
    pair_unitary,
    souriau_map,
)


def planted_pair(n, k, seed):
    """Random pair of Lagrangian planes meeting in exactly k directions."""
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0.35, np.pi - 0.35, size=n - k)
    X2 = np.eye(n)
    Y2 = np.zeros((n, n))
    for j, th in enumerate(theta):
        X2[k + j, k + j] = np.cos(th)
        Y2[k + j, k + j] = np.sin(th)
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, R = np.linalg.qr(Z)
    Q = Q * (np.diagonal(R) / np.abs(np.diagonal(R)))
    l1 = NormalizedFrame(Q.real.copy(), Q.imag.copy())
    U2 = Q @ (X2 + 1j * Y2)
    return l1, NormalizedFrame(U2.real.copy(), U2.imag.copy())


n = 4
print(f"Planted intersections in R^{2 * n}, recovered from the spectrum:")
for k in range(n + 1):
    l1, l2 = planted_pair(n, k, seed=10 + k)
    via_unitary = intersection_dim(l1, l2)
    via_rank = brute_intersection_dim(l1, l2)
    phases = np.sort(np.angle(np.linalg.eigvals(pair_unitary(l1, l2).matrix)))
    print(f"  k = {k}:  unitary route {via_unitary},  rank route {via_rank},  "
          f"phases {np.round(phases, 3)}")

print("\nCompanion spectra for one pair (k = 2):")
l1, l2 = planted_pair(n, 2, seed=12)
wt = np.linalg.eigvals(pair_unitary(l1, l2).matrix)
ws = np.linalg.eigvals(souriau_map(l1, l2).matrix)
print(f"  pair unitary ({n} values):        "
      f"{np.round(np.sort(np.angle(wt)), 4)}")
print(f"  orthogonal companion ({2 * n} values): "
      f"{np.round(np.sort(np.angle(ws)), 4)}")
print("  -> every phase appears together with its negative (conjugate pair)")

nu = direct_sum_souriau(l1, l2).structured_spectrum()
folded = np.sort(np.angle(-(nu**2)))
print(f"\n  doubled swap companion, -nu^2 ({2 * n} values): {np.round(folded, 4)}")
print("  -> the pair unitary's spectrum again, each phase twice")

count_minus_one = int(np.sum(np.abs(ws + 1.0) < 1e-8))
print(f"\n  eigenvalue -1 appears {count_minus_one} times in the companion "
      f"(2k for planted k = 2)")
