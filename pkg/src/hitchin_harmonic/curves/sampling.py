"""
Sampled positivity checks for curves.
"""

import logging
from typing import Any, Dict, List, Sequence

import numpy as np

from ..shared.errors import DomainError, PositivityViolation, TransversalityError
from ..flags.flag import flag_distance
from ..flags.positivity import totally_positive
from ..flags.triples import normalize_triple
from .curve import PositiveCurve, build_curve
from .homeo import PiecewiseMonotone, random_homeomorphism

# Configure logging
logger = logging.getLogger(__name__)


def positivity_sweep(curve: PositiveCurve, rng: np.random.Generator, samples: int = 200,
                     extent: float = None, include_infinity: bool = True) -> Dict[str, Any]:
    """Normalize sampled increasing triples of the curve and record their margins."""
    extent = extent if extent is not None else curve.window
    margins: List[float] = []
    failures: List[Dict[str, Any]] = []
    for j in range(samples):
        t = np.sort(rng.uniform(-extent, extent, size=3))
        if include_infinity and j % 4 == 3:
            t[2] = np.inf
        if np.any(np.diff(t) < 1e-6):
            continue
        try:
            _, n = normalize_triple(*(curve.eval_flag(float(s)) for s in t))
            margins.append(totally_positive(n).margin)
        except (PositivityViolation, TransversalityError) as e:
            failures.append({"triple": t.tolist(), **e.payload()})
    if failures:
        logger.warning(f"⚠️ {len(failures)} sampled triple(s) failed positivity")
    return {
        "samples": len(margins) + len(failures),
        "positive": len(margins),
        "failures": failures,
        "min_margin": float(min(margins)) if margins else None,
    }


def limit_family(phis: Sequence[PiecewiseMonotone], epsilons: Sequence[float], rng: np.random.Generator,
                 window: float = 32.0) -> List[PositiveCurve]:
    """Curves of (1 − ε)·φ_i + ε·ψ_i for seeded perturbations ψ_i, one per ε."""
    perturbations = [random_homeomorphism(rng, window) for _ in phis]
    curves = []
    for eps in epsilons:
        if not 0.0 <= eps <= 1.0:
            raise DomainError(f"blend weight must lie in [0, 1], got {eps}")
        curves.append(build_curve([phi.blend(psi, eps) for phi, psi in zip(phis, perturbations)], window))
    return curves


def limit_convergence(limit: PositiveCurve, family: Sequence[PositiveCurve], params: Sequence[float]) -> List[float]:
    """Sup flag distance to the limit curve over the given parameters, per family member."""
    return [max(flag_distance(c.eval_flag(t), limit.eval_flag(t)) for t in params) for c in family]
