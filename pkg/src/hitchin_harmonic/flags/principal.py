"""
The irreducible representation SL₂(ℝ) → SL_d(ℝ) matching the Veronese curve.

Coordinates are v_k = x^k y^{d−1−k} / k! stored at position d−1−k, so that
the unipotent [[1, t], [0, 1]] maps to exp(t·N) with N the unit superdiagonal
and the Veronese flag exp(t·N)·σ₀ is equivariant.
"""

import math

import numpy as np
from numpy.polynomial import polynomial as P

from ..shared.errors import DomainError


def principal_image(g: np.ndarray, d: int) -> np.ndarray:
    """ρ_d(g) for a real 2×2 matrix g."""
    g = np.asarray(g, dtype=float)
    if g.shape != (2, 2):
        raise DomainError("principal image needs a 2×2 matrix")
    a, b = g[0]
    c, dd = g[1]
    rho = np.zeros((d, d))
    for k in range(d):
        poly = P.polymul(P.polypow([b, a], k), P.polypow([dd, c], d - 1 - k)) / math.factorial(k)
        coeffs = np.zeros(d)
        coeffs[:len(poly)] = poly[:d]
        for j in range(d):
            rho[d - 1 - k, d - 1 - j] = coeffs[j] * math.factorial(j)
    return rho


FLIP = np.array([[0.0, -1.0], [1.0, 0.0]])
