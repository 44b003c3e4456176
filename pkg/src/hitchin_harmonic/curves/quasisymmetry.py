"""
Sampled quasisymmetry constants of monotone maps and of positive curves.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from ..shared.errors import DomainError
from ..hyp2.plane import INF, Mobius
from ..flags.triples import cross_ratio_i, standard_position
from .curve import PositiveCurve
from .homeo import PiecewiseMonotone

# Configure logging
logger = logging.getLogger(__name__)


@dataclass
class QsGrid:
    """Lattice of (x, t) samples; x and t share the step so integer points are hit."""
    extent: float = 8.0
    step: float = 0.25
    max_t: float = 8.0

    def points(self):
        x = np.arange(-self.extent, self.extent + 0.5 * self.step, self.step)
        t = np.arange(self.step, self.max_t + 0.5 * self.step, self.step)
        return np.meshgrid(x, t, indexing='ij')


def qs_constant(phi: PiecewiseMonotone, grid: Optional[QsGrid] = None) -> Dict[str, Any]:
    """Sampled sup of max(ratio, 1/ratio), ratio = (φ(x+t)−φ(x)) / (φ(x)−φ(x−t)).

    The value is a lower bound for the true constant.
    """
    grid = grid or QsGrid()
    x, t = grid.points()
    fx = np.asarray(phi(x))
    up = np.asarray(phi(x + t)) - fx
    down = fx - np.asarray(phi(x - t))
    valid = (up > 0) & (down > 0)
    ratio = np.where(valid, up / np.where(valid, down, 1.0), 1.0)
    k = np.maximum(ratio, 1.0 / ratio)
    idx = np.unravel_index(int(np.argmax(k)), k.shape)
    return {
        "K": float(k[idx]),
        "x": float(x[idx]),
        "t": float(t[idx]),
        "samples": int(valid.sum()),
        "step": grid.step,
    }


def symmetric_quadruples(rng: np.random.Generator, count: int, extent: float,
                         mobius_count: int = 0):
    """Domain quadruples with cross ratio −1, dihedrally ordered.

    (x−s, x, x+s, ∞) for sampled x, s, then Möbius images of (−1, 0, 1, ∞).
    """
    quads = []
    for _ in range(count):
        x = rng.uniform(-extent, extent)
        s = np.exp(rng.uniform(np.log(0.05), np.log(extent)))
        quads.append((x - s, x, x + s, INF))
    base = (-1.0, 0.0, 1.0, INF)
    for _ in range(mobius_count):
        g = Mobius.random(rng)
        quads.append(tuple(g.apply_ideal(p) for p in base))
    return quads


def _rotate_to_finite_first(quad):
    """Cyclic rotation keeping the dihedral order with ∞, if present, last."""
    quad = list(quad)
    if any(np.isinf(q) for q in quad):
        k = next(i for i, q in enumerate(quad) if np.isinf(q))
        quad = quad[k + 1:] + quad[:k + 1]
    return tuple(quad)


def curve_qs_constant(curve: PositiveCurve, rng: np.random.Generator, samples: int = 200,
                      mobius_samples: int = 50, extent: Optional[float] = None) -> Dict[str, Any]:
    """Sampled sup over CR = −1 quadruples of max_i max(−CR_i, −1/CR_i)."""
    extent = extent if extent is not None else curve.window / 2.0
    best, skipped, used = 1.0, 0, 0
    for quad in symmetric_quadruples(rng, samples, extent, mobius_samples):
        quad = _rotate_to_finite_first(quad)
        try:
            flags = [curve.eval_flag(t) for t in quad]
            q = standard_position(*flags)
            values = [cross_ratio_i(q, i) for i in range(1, curve.d)]
        except DomainError:
            skipped += 1
            continue
        if any(v >= 0 for v in values):
            skipped += 1
            continue
        used += 1
        best = max(best, max(max(-v, -1.0 / v) for v in values))
    if skipped:
        logger.warning(f"⚠️ skipped {skipped} degenerate quadruple(s) in curve quasisymmetry sampling")
    return {"K": float(best), "samples": used, "skipped": skipped}
