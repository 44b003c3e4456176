"""
Samplers over the visual boundary of Y_d.

Candidates are (frame, type) pairs: seeded random rotations, identity and
permutation frames, crossed with chamber-wall types and a low-discrepancy
lattice of regular types folded into the positive chamber.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, List, Tuple

import numpy as np
import scipy.linalg
from scipy.special import ndtri
from scipy.stats import special_ortho_group

from ..shared.errors import DomainError
from ..spd.busemann import IdealPoint, rho_type
from ..spd.weyl import fundamental_coweights

# Configure logging
logger = logging.getLogger(__name__)

MAX_FULL_PERMUTATIONS = 4


def _generalized_golden(m: int) -> float:
    """Root > 1 of x^{m+1} = x + 1."""
    phi = 2.0
    for _ in range(64):
        phi = (1.0 + phi) ** (1.0 / (m + 1))
    return phi


def lattice_types(d: int, count: int) -> List[np.ndarray]:
    """Kronecker-lattice directions of the trace-free Cartan algebra, sorted into the chamber."""
    m = d - 1
    basis = scipy.linalg.null_space(np.ones((1, d)))
    alpha = (1.0 / _generalized_golden(m)) ** np.arange(1, m + 1)
    u = np.mod(0.5 + np.outer(np.arange(count), alpha), 1.0)
    g = ndtri(np.clip(u, 1e-12, 1.0 - 1e-12))
    types = []
    for row in g:
        n = np.linalg.norm(row)
        if n == 0:
            continue
        v = np.sort(basis @ (row / n))[::-1]
        if not any(np.allclose(v, t) for t in types):
            types.append(v)
    return types


def wall_types(d: int) -> List[np.ndarray]:
    """The extreme rays ω_k of the chamber and the barycentric type ρ."""
    omega = fundamental_coweights(d)
    return [omega[:, k] for k in range(d - 1)] + [rho_type(d).v]


def structured_frames(d: int) -> List[np.ndarray]:
    """Identity and permutation frames; cyclic shifts and reversals beyond small d."""
    eye = np.eye(d)
    if d <= MAX_FULL_PERMUTATIONS:
        perms = list(itertools.permutations(range(d)))
    else:
        shifts = [tuple(np.roll(np.arange(d), s)) for s in range(d)]
        perms = shifts + [tuple(p[::-1]) for p in shifts]
    return [eye[:, list(p)] for p in perms]


@dataclass
class EtaSampler:
    """Reproducible candidate set and local refinement for inf over η."""

    d: int
    frames: int = 32
    types: int = 8
    restarts: int = 64
    structured: bool = True

    def candidates(self, rng: np.random.Generator) -> List[IdealPoint]:
        if self.d < 2:
            raise DomainError("ideal points need d ≥ 2")
        type_set = wall_types(self.d) + lattice_types(self.d, self.types)
        frames = []
        if self.structured:
            frames.extend(structured_frames(self.d))
        if self.frames:
            rots = special_ortho_group.rvs(self.d, size=self.frames, random_state=rng)
            frames.extend(np.reshape(rots, (self.frames, self.d, self.d)))
        return [IdealPoint.from_type(k, v) for k in frames for v in type_set]

    def refine(self, objective: Callable[[IdealPoint], float], start: IdealPoint, value: float,
               rng: np.random.Generator) -> Tuple[IdealPoint, float]:
        """Local random search from the running argmin; only improvements are kept."""
        best, best_value = start, value
        scale = 0.2
        stale = 0
        for _ in range(self.restarts):
            skew = rng.normal(scale=scale, size=(self.d, self.d))
            rot = scipy.linalg.expm(skew - skew.T)
            v = best.type_vec.v + rng.normal(scale=scale, size=self.d)
            v = v - v.mean()
            if np.linalg.norm(v) == 0:
                continue
            trial = IdealPoint.from_type(best.frame @ rot, v)
            trial_value = objective(trial)
            if trial_value < best_value:
                best, best_value, stale = trial, trial_value, 0
            else:
                stale += 1
                if stale >= 16:
                    scale *= 0.5
                    stale = 0
        return best, best_value
