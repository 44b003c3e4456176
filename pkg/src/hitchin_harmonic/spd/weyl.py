"""
Weyl chambers and cones: Θ-separation and distance to Weyl cones.
"""

import logging
from collections import deque
from itertools import product
from typing import Iterable, List, Optional, Tuple

import numpy as np
from scipy import optimize

from ..shared.errors import DomainError
from .geometry import KAPPA, SpdPoint, spd_sqrt, sym, vector_distance

# Configure logging
logger = logging.getLogger(__name__)

REGULARITY_TOL = 1e-9


def fundamental_coweights(d: int) -> np.ndarray:
    """Columns ω_1..ω_{d−1}, the extreme rays of the positive chamber."""
    omega = np.zeros((d, d - 1))
    for k in range(1, d):
        omega[:k, k - 1] = (d - k) / d
        omega[k:, k - 1] = -k / d
    return omega


def _parse_theta(d: int, theta: Iterable[int]) -> Tuple[int, ...]:
    theta = tuple(sorted(set(int(j) for j in theta)))
    if not theta:
        raise DomainError("Θ must be non-empty")
    if theta[0] < 1 or theta[-1] > d - 1:
        raise DomainError(f"Θ must be a subset of 1..{d - 1}, got {theta}")
    return theta


def weyl_subgroup(d: int, theta: Iterable[int]) -> List[Tuple[int, ...]]:
    """Permutations generated by the simple transpositions s_j, j ∉ Θ."""
    theta = _parse_theta(d, theta)
    generators = [j for j in range(1, d) if j not in theta]
    identity = tuple(range(d))
    seen = {identity}
    queue = deque([identity])
    while queue:
        perm = queue.popleft()
        for j in generators:
            nxt = list(perm)
            nxt[j - 1], nxt[j] = nxt[j], nxt[j - 1]
            nxt = tuple(nxt)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return sorted(seen)


def _max_cone_cosine(g: np.ndarray, h: np.ndarray, rng: np.random.Generator,
                     starts: int, tol: float) -> float:
    """Largest cosine between vectors of the cones spanned by columns of g and h."""
    gn = g / np.linalg.norm(g, axis=0)
    hn = h / np.linalg.norm(h, axis=0)
    best = float(np.max(gn.T @ hn))
    m, n = g.shape[1], h.shape[1]

    def negative_cosine(z):
        a, b = z[:m], z[m:]
        x, y = g @ a, h @ b
        nx, ny = np.linalg.norm(x), np.linalg.norm(y)
        if nx < 1e-14 or ny < 1e-14:
            return 1.0, np.zeros_like(z)
        c = float(x @ y) / (nx * ny)
        dx = y / (nx * ny) - c * x / nx ** 2
        dy = x / (nx * ny) - c * y / ny ** 2
        return -c, -np.concatenate([g.T @ dx, h.T @ dy])

    candidates = [np.ones(m + n)]
    for i, j in product(range(m), range(n)):
        z = np.full(m + n, 1e-3)
        z[i] = 1.0
        z[m + j] = 1.0
        candidates.append(z)
    candidates.extend(rng.uniform(0.0, 1.0, size=(starts, m + n)))

    for z0 in candidates:
        res = optimize.minimize(negative_cosine, z0, jac=True, method='L-BFGS-B',
                                bounds=[(0.0, None)] * (m + n),
                                options={'ftol': tol * 1e-3, 'gtol': tol * 1e-3, 'maxiter': 500})
        best = max(best, -float(res.fun))
    return min(best, 1.0)


def separation(d: int, theta: Iterable[int], tol: float = 1e-8, starts: int = 16,
               rng: Optional[np.random.Generator] = None) -> float:
    """ε(𝔞, Θ) = −cos of the least angle between W_Θ·𝔞⁺ and −𝔞⁺."""
    if d < 2:
        raise DomainError(f"separation needs d ≥ 2, got {d}")
    rng = rng if rng is not None else np.random.default_rng(0)
    omega = fundamental_coweights(d)
    best = -1.0
    for perm in weyl_subgroup(d, theta):
        best = max(best, _max_cone_cosine(omega[list(perm), :], -omega, rng, starts, tol))
    logger.debug(f"separation d={d} Θ={tuple(theta)}: {-best:.10f}")
    return -best


def cone_frame(base: SpdPoint, through: SpdPoint) -> Tuple[np.ndarray, np.ndarray]:
    """(g, v0) with base = g gᵀ and through = g exp(v0) gᵀ, v0 descending."""
    s, si = spd_sqrt(base.m)
    w, v = np.linalg.eigh(sym(si @ through.m @ si))
    return s @ v[:, ::-1], np.log(w[::-1])


def weyl_cone_distance(p: SpdPoint, base: SpdPoint, through: SpdPoint, tol: float = 1e-6,
                       starts: int = 8, rng: Optional[np.random.Generator] = None) -> float:
    """Distance from p to the Weyl cone with tip `base` containing `through`."""
    if not vector_distance(base, through).is_regular(REGULARITY_TOL):
        raise DomainError("base and through span an irregular Weyl cone")
    rng = rng if rng is not None else np.random.default_rng(0)
    d = p.d
    g, v0 = cone_frame(base, through)
    omega = fundamental_coweights(d)
    pinv = np.linalg.pinv(omega)

    def half_sq(a):
        v = omega @ a
        ai = np.linalg.inv(g * np.exp(v / 2.0))
        w, u = np.linalg.eigh(sym(ai @ p.m @ ai.T))
        logs = np.log(w)
        grad_v = -KAPPA ** 2 * np.einsum('ij,j,ij->i', u, logs, u)
        return 0.5 * KAPPA ** 2 * float(logs @ logs), omega.T @ grad_v

    # body coordinates of p seen from the cone frame
    gi = np.linalg.inv(g)
    p_coords = np.log(np.clip(np.diag(gi @ p.m @ gi.T), 1e-300, None))
    seeds = [np.zeros(d - 1), np.clip(pinv @ v0, 0.0, None), np.clip(pinv @ p_coords, 0.0, None)]
    scale = max(1.0, float(np.max(np.abs(v0))))
    while len(seeds) < starts:
        seeds.append(rng.uniform(0.0, scale, size=d - 1))

    best = np.inf
    for a0 in seeds[:max(starts, 1)]:
        res = optimize.minimize(half_sq, a0, jac=True, method='L-BFGS-B',
                                bounds=[(0.0, None)] * (d - 1),
                                options={'ftol': 1e-16, 'gtol': tol * 1e-3, 'maxiter': 2000})
        best = min(best, float(res.fun))
    return float(np.sqrt(max(2.0 * best, 0.0)))
