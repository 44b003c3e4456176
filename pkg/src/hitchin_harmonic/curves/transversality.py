"""
Counting parameters where a positive curve fails to be transverse to a subspace.

For a k-dimensional V the pairing is t ↦ det[V | φ(t)^(d−k)], evaluated along
the chain −∞ → −T → T → +∞ with consistent orientations across the charts.
Zeros are sign changes (refined by bracketing) and tangential minima of |det|.
"""

import math
import logging
from dataclasses import dataclass, field
from typing import Callable, List, Tuple

import numpy as np
from scipy import optimize

from ..shared.errors import DomainError
from .curve import PositiveCurve

# Configure logging
logger = logging.getLogger(__name__)

ZERO_TOL = 1e-9


@dataclass
class NontransverseReport:
    count: int
    locations: List[float] = field(default_factory=list)
    tangential: List[float] = field(default_factory=list)
    at_infinity: bool = False
    samples: int = 0

    @property
    def total(self) -> int:
        return self.count + int(self.at_infinity)

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "total": self.total,
            "locations": self.locations,
            "tangential": self.tangential,
            "at_infinity": self.at_infinity,
            "samples": self.samples,
        }


def _block(basis: np.ndarray, cols: int) -> np.ndarray:
    b = basis[:, :cols]
    return b / np.linalg.norm(b)


def _orientation(ref: np.ndarray, other: np.ndarray) -> float:
    """Sign of the change of basis between two bases of one subspace."""
    m, *_ = np.linalg.lstsq(ref, other, rcond=None)
    return float(np.sign(np.linalg.det(m)))


def _pairing(v: np.ndarray, block: np.ndarray) -> float:
    return float(np.linalg.det(np.hstack([v, block])))


def count_nontransverse(curve: PositiveCurve, v: np.ndarray, samples: int = 2000) -> NontransverseReport:
    """Zeros of det[V | φ(t)^(d−k)] over ℝ, with ∞ reported separately.

    Args:
        curve: Positive curve
        v: d×k matrix whose columns span V, 1 ≤ k ≤ d−1
        samples: Grid points in the window; each outer chart gets a quarter as many
    """
    v = np.asarray(v, dtype=float)
    if v.ndim == 1:
        v = v[:, None]
    d, k = v.shape
    if d != curve.d or not 1 <= k <= d - 1:
        raise DomainError(f"V must be a {curve.d}×k matrix with 1 ≤ k ≤ {curve.d - 1}")
    q, _ = np.linalg.qr(v)
    cols = d - k
    lo, hi = curve.breakpoints[0], curve.breakpoints[-1]

    left_sign = _orientation(_block(curve.window_basis(lo - 1.0), cols), _block(curve.flip_basis(lo - 1.0), cols))
    right_sign = _orientation(_block(curve.window_basis(hi + 1.0), cols), _block(curve.flip_basis(hi + 1.0), cols))

    def f(t: float) -> float:
        if lo <= t <= hi:
            return _pairing(q, _block(curve.window_basis(t), cols))
        sign = right_sign if t > hi else left_sign
        return sign * _pairing(q, _block(curve.flip_basis(t), cols))

    outer = max(samples // 4, 16)
    tau = np.geomspace(1e-3, 1e9, outer)
    grid = np.concatenate([lo - tau[::-1], np.linspace(lo, hi, samples), hi + tau])
    values = np.array([f(t) for t in grid])

    locations: List[float] = []
    tangential: List[float] = []
    for a, b, fa, fb in zip(grid[:-1], grid[1:], values[:-1], values[1:]):
        if fa == 0.0:
            locations.append(float(a))
        elif fa * fb < 0:
            locations.append(float(optimize.brentq(f, a, b, xtol=1e-14, rtol=1e-14)))

    mags = np.abs(values)
    for j in range(1, len(grid) - 1):
        if mags[j] <= mags[j - 1] and mags[j] <= mags[j + 1] and values[j - 1] * values[j + 1] > 0:
            res = optimize.minimize_scalar(lambda t: abs(f(t)), bounds=(grid[j - 1], grid[j + 1]),
                                           method='bounded', options={'xatol': 1e-12})
            if res.fun <= ZERO_TOL and values[j] != 0.0:
                tangential.append(float(res.x))

    at_inf = abs(_pairing(q, _block(curve.flip_basis(math.inf), cols))) <= ZERO_TOL
    report = NontransverseReport(count=len(locations) + len(tangential), locations=locations,
                                 tangential=tangential, at_infinity=bool(at_inf), samples=len(grid))
    logger.debug(f"non-transversality count for k={k}: {report.count} (∞: {report.at_infinity})")
    return report
