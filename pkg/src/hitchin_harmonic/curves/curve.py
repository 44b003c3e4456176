"""
Positive curves ℝP¹ → Flag(ℝ^d) from d−1 monotone maps.

The curve is t ↦ n(t)·σ₀ with n solving dn = n·C(t) dt, where C(t) has the
slopes of φ_1, …, φ_{d−1} on its superdiagonal. For piecewise-linear data
n is an exact finite product of nilpotent exponentials, anchored at n(0) = I.

On [−T, T], and out to the outermost breakpoints of the data, the flag is
n(t)·σ₀ directly. Beyond that the data extend affinely with their own end
slopes, and with h C h⁻¹ = N the flag is

    n(t±) h⁻¹ ρ(w) exp(u N) σ₀,   u = −1/(t − t±),

where t± are the outermost breakpoints and ρ(w) is the principal image of
the flip t ↦ −1/t. At t = ±∞ it is σ_∞.
"""

import math
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..shared.errors import DomainError, RangeError
from ..flags.flag import Flag, Unipotent, flag_distance, nilpotent_exp, sigma_inf, superdiagonal_matrix
from ..flags.principal import FLIP, principal_image
from ..flags.positivity import positivity_margin_array
from .homeo import PiecewiseMonotone

# Configure logging
logger = logging.getLogger(__name__)

DEFAULT_WINDOW = 32.0


@dataclass(eq=False)
class PositiveCurve:
    """Ordered-exponential curve with a flip chart beyond its window."""

    phis: List[PiecewiseMonotone]
    window: float
    breakpoints: np.ndarray
    slopes: np.ndarray
    cumulative: np.ndarray
    end_slopes: Tuple[np.ndarray, np.ndarray]
    allow_flip: bool = True
    zero_slope_segments: int = 0
    _flip_bases: dict = field(default_factory=dict, repr=False)

    @property
    def d(self) -> int:
        return self.slopes.shape[0] + 1

    # -- flows -------------------------------------------------------------

    def _segments(self):
        """(lo, hi, slope vector) for every piece, including the two infinite ends."""
        yield -math.inf, self.breakpoints[0], self.end_slopes[0]
        for k in range(self.slopes.shape[1]):
            yield self.breakpoints[k], self.breakpoints[k + 1], self.slopes[:, k]
        yield self.breakpoints[-1], math.inf, self.end_slopes[1]

    def transition(self, a, b) -> np.ndarray:
        """n(a)⁻¹ n(b), batched over broadcast arrays a, b."""
        a, b = np.broadcast_arrays(np.asarray(a, dtype=float), np.asarray(b, dtype=float))
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        forward = (b >= a)[..., None, None]
        d = self.d
        up = np.broadcast_to(np.eye(d), a.shape + (d, d)).copy()
        down = up.copy()
        for seg_lo, seg_hi, c in self._segments():
            length = np.clip(np.minimum(hi, seg_hi) - np.maximum(lo, seg_lo), 0.0, None)
            if not np.any(length > 0):
                continue
            nil = superdiagonal_matrix(np.multiply.outer(length, c))
            up = up @ nilpotent_exp(nil)
            down = nilpotent_exp(-nil) @ down
        out = np.where(forward, up, down)
        return out

    def n(self, t) -> np.ndarray:
        """n(t) = transition(0, t)."""
        t = np.asarray(t, dtype=float)
        if np.any(~np.isfinite(t)):
            raise DomainError("n(t) is only defined for finite t")
        if t.ndim == 0:
            return self._n_scalar(float(t))
        return self.transition(np.zeros_like(t), t)

    def _n_scalar(self, t: float) -> np.ndarray:
        k = int(np.clip(np.searchsorted(self.breakpoints, t, side='right') - 1, 0, self.breakpoints.size - 1))
        if t < self.breakpoints[0]:
            c, base, k = self.end_slopes[0], self.breakpoints[0], 0
        elif k >= self.slopes.shape[1]:
            c, base, k = self.end_slopes[1], self.breakpoints[-1], self.breakpoints.size - 1
        else:
            c, base = self.slopes[:, k], self.breakpoints[k]
        return self.cumulative[k] @ nilpotent_exp(superdiagonal_matrix((t - base) * c))

    # -- flags -------------------------------------------------------------

    def in_window(self, t: float) -> bool:
        """Whether t lies in the direct chart, which reaches the outermost breakpoints."""
        return self.breakpoints[0] <= t <= self.breakpoints[-1]

    def _flip_base(self, side: int) -> np.ndarray:
        """n(t±) h⁻¹ ρ(w) for the given side (+1 or −1)."""
        if side not in self._flip_bases:
            end = self.breakpoints[-1] if side > 0 else self.breakpoints[0]
            c = self.end_slopes[1] if side > 0 else self.end_slopes[0]
            h = np.concatenate([[1.0], np.cumprod(c)])
            self._flip_bases[side] = (self._n_scalar(end) / h[None, :]) @ principal_image(FLIP, self.d)
        return self._flip_bases[side]

    def flip_basis(self, t: float) -> np.ndarray:
        """Adapted basis of the flag at t in the flipped chart (beyond the outermost breakpoints)."""
        if math.isinf(t):
            return sigma_inf(self.d).basis
        side = 1 if t > 0 else -1
        end = self.breakpoints[-1] if side > 0 else self.breakpoints[0]
        u = -1.0 / (t - end)
        local = nilpotent_exp(superdiagonal_matrix(np.full(self.d - 1, u)))
        return (self._flip_base(side) @ local)[:, ::-1]

    def window_basis(self, t: float) -> np.ndarray:
        return self._n_scalar(t)[:, ::-1]

    def flag_basis(self, t: float) -> np.ndarray:
        """Adapted basis of φ(t), choosing the chart."""
        if self.in_window(t):
            return self.window_basis(t)
        if not self.allow_flip:
            raise RangeError(f"t = {t} lies outside the direct chart [{self.breakpoints[0]}, {self.breakpoints[-1]}]")
        return self.flip_basis(t)

    def eval_flag(self, t: float) -> Flag:
        """φ(t) = n(t)·σ₀; σ_∞ at t = ±∞."""
        if math.isnan(t):
            raise DomainError("curve parameter is NaN")
        return Flag(self.flag_basis(float(t)))

    def chart_gluing_defect(self, samples: int = 64, spread: float = 4.0) -> float:
        """Largest flag gap between the two charts on [T, spread·T] and its mirror."""
        worst = 0.0
        for side in (1, -1):
            end = self.breakpoints[-1] if side > 0 else self.breakpoints[0]
            for tau in np.geomspace(1e-2, spread * self.window, samples):
                t = end + side * tau
                worst = max(worst, flag_distance(Flag(self.window_basis(t)), Flag(self.flip_basis(t))))
        return worst


def build_curve(phis: Sequence[PiecewiseMonotone], window: float = DEFAULT_WINDOW,
                allow_flip: bool = True, check_samples: int = 32) -> PositiveCurve:
    """Build n(t) from d−1 normalized monotone maps."""
    phis = list(phis)
    if not phis:
        raise DomainError("at least one monotone map is required")
    if window <= 1:
        raise DomainError("window must contain 0 and 1")
    for i, phi in enumerate(phis):
        if not phi.is_normalized:
            raise DomainError(f"map {i + 1} is not normalized at (0, 1)")

    t = np.array([-window, 0.0, 1.0, window])
    for phi in phis:
        t = np.union1d(t, phi.breakpoints)
    values = np.stack([np.asarray(phi(t)) for phi in phis])
    slopes = np.diff(values, axis=1) / np.diff(t)[None, :]
    zero_segments = int(np.sum(np.any(slopes <= 0, axis=0)))
    if zero_segments:
        logger.warning(f"⚠️ {zero_segments} zero-slope segment(s); positivity degrades to non-negativity there")
    end_slopes = (np.array([phi.end_slopes[0] for phi in phis]),
                  np.array([phi.end_slopes[1] for phi in phis]))
    if np.any(end_slopes[0] <= 0) or np.any(end_slopes[1] <= 0):
        raise DomainError("end slopes must be positive")

    d = len(phis) + 1
    zero_idx = int(np.searchsorted(t, 0.0))
    cumulative = np.empty((t.size, d, d))
    cumulative[zero_idx] = np.eye(d)
    for k in range(zero_idx, t.size - 1):
        cumulative[k + 1] = cumulative[k] @ nilpotent_exp(superdiagonal_matrix((t[k + 1] - t[k]) * slopes[:, k]))
    for k in range(zero_idx - 1, -1, -1):
        cumulative[k] = cumulative[k + 1] @ nilpotent_exp(superdiagonal_matrix((t[k] - t[k + 1]) * slopes[:, k]))
    cumulative = np.triu(cumulative)
    cumulative[:, np.arange(d), np.arange(d)] = 1.0

    curve = PositiveCurve(phis=phis, window=float(window), breakpoints=t, slopes=slopes,
                          cumulative=cumulative, end_slopes=end_slopes, allow_flip=allow_flip,
                          zero_slope_segments=zero_segments)

    if check_samples and d <= 6 and not zero_segments:
        grid = np.linspace(-window, window, check_samples)
        a, b = np.meshgrid(grid, grid, indexing='ij')
        # longer flows are products of these short ones
        mask = (a < b) & (b - a <= 4.0 * (grid[1] - grid[0]))
        margins = positivity_margin_array(curve.transition(a[mask], b[mask]))
        if np.any(margins <= 0):
            raise DomainError(f"flow lost total positivity (least minor {margins.min():.3e})")
    logger.debug(f"Built curve d={d} with {t.size} breakpoints in window ±{window}")
    return curve


def veronese_curve(d: int, window: float = DEFAULT_WINDOW, allow_flip: bool = True) -> PositiveCurve:
    """All maps the identity: n(t) = exp(t N)."""
    return build_curve([PiecewiseMonotone.identity() for _ in range(d - 1)], window, allow_flip)


def unipotent_at(curve: PositiveCurve, t: float) -> Unipotent:
    return Unipotent.clean(curve.n(t))
