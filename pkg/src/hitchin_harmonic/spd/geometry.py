"""
The symmetric space Y_d of PGL_d(ℝ) as determinant-one SPD matrices.

The metric is κ²·tr((P⁻¹dP)²) with κ = 1/√2, so that every root sl₂ block is
a curvature −1 hyperbolic plane. Tangent vectors are stored in the body
frame s = P^{-1/2} X P^{-1/2}.

Array functions take stacks of shape (..., d, d) and broadcast; the
dataclasses wrap them for single points.
"""

import math
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from ..shared.errors import ConvergenceError, DomainError

# Configure logging
logger = logging.getLogger(__name__)

KAPPA = 1.0 / math.sqrt(2.0)

SYMMETRY_TOL = 1e-12
TRACE_TOL = 1e-12
DET_TOL = 1e-10


# ---------------------------------------------------------------------------
# Array kernels
# ---------------------------------------------------------------------------

def sym(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + np.swapaxes(m, -1, -2))


def _eig_apply(m: np.ndarray, fn) -> np.ndarray:
    """f(M) for symmetric M through its eigendecomposition."""
    w, v = np.linalg.eigh(sym(m))
    return (v * fn(w)[..., None, :]) @ np.swapaxes(v, -1, -2)


def spd_sqrt(p: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """(P^{1/2}, P^{-1/2}) from one eigendecomposition."""
    w, v = np.linalg.eigh(sym(p))
    if np.any(w <= 0):
        raise DomainError("matrix is not positive definite")
    vt = np.swapaxes(v, -1, -2)
    s = np.sqrt(w)
    return (v * s[..., None, :]) @ vt, (v / s[..., None, :]) @ vt


def spd_log(p: np.ndarray) -> np.ndarray:
    return _eig_apply(p, np.log)


def sym_exp(s: np.ndarray) -> np.ndarray:
    return _eig_apply(s, np.exp)


def det_normalize(p: np.ndarray) -> np.ndarray:
    """Scale a stack of SPD matrices to determinant one."""
    d = p.shape[-1]
    sign, logdet = np.linalg.slogdet(p)
    if np.any(sign <= 0):
        raise DomainError("matrix has non-positive determinant")
    return p * np.exp(-logdet / d)[..., None, None]


def trace_free(s: np.ndarray) -> np.ndarray:
    d = s.shape[-1]
    tr = np.trace(s, axis1=-2, axis2=-1)
    return s - (tr / d)[..., None, None] * np.eye(d)


def body_log(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """log(P^{-1/2} Q P^{-1/2}): the logarithm of Q at P in the body frame."""
    _, pi = spd_sqrt(p)
    return spd_log(pi @ q @ pi)


def log_eigs(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Descending logs of the generalized eigenvalues of Q relative to P."""
    l = np.linalg.cholesky(sym(p))
    li = np.linalg.inv(l)
    m = li @ q @ np.swapaxes(li, -1, -2)
    w = np.linalg.eigvalsh(sym(m))
    if np.any(w <= 0):
        raise DomainError("matrix is not positive definite")
    return np.log(w)[..., ::-1]


def distance_array(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    return KAPPA * np.linalg.norm(log_eigs(p, q), axis=-1)


def metric_norm(s: np.ndarray) -> np.ndarray:
    """κ‖s‖_F of body-frame tangent vectors."""
    return KAPPA * np.linalg.norm(s, axis=(-2, -1))


def congruence(g: np.ndarray, p: np.ndarray) -> np.ndarray:
    """g·P = g P gᵀ / |det g|^{2/d}."""
    d = p.shape[-1]
    _, logdet = np.linalg.slogdet(g)
    return (g @ p @ np.swapaxes(g, -1, -2)) * np.exp(-2.0 * logdet / d)[..., None, None]


def geodesic_array(p: np.ndarray, q: np.ndarray, t) -> np.ndarray:
    s, si = spd_sqrt(p)
    t = np.asarray(t, dtype=float)
    return s @ _eig_apply(si @ q @ si, lambda w: w ** t[..., None] if t.ndim else w ** t) @ s


def karcher_mean_array(points: np.ndarray, weights: np.ndarray, init: Optional[np.ndarray] = None,
                       tol: float = 1e-10, max_iter: int = 200) -> Tuple[np.ndarray, np.ndarray, int]:
    """Weighted Riemannian centres of mass of batched point sets.

    Args:
        points: Stack (..., k, d, d) of SPD matrices
        weights: Non-negative weights (..., k); zero rows are padding
        init: Optional starting estimate (..., d, d); log-Euclidean mean otherwise
        tol: Bound on κ‖Σ wᵢ log_h(pᵢ)‖ / Σ wᵢ
        max_iter: Iteration cap

    Returns:
        (means, residuals, iterations)
    """
    points = np.asarray(points, dtype=float)
    weights = np.asarray(weights, dtype=float)
    if np.any(weights < 0):
        raise DomainError("Karcher weights must be non-negative")
    total = weights.sum(axis=-1)
    if np.any(total <= 0):
        raise DomainError("Karcher weights are all zero")
    wn = (weights / total[..., None])[..., None, None]

    if init is None:
        h = det_normalize(sym_exp(trace_free(np.sum(wn * spd_log(points), axis=-3))))
    else:
        h = det_normalize(np.array(init, dtype=float))

    def gradient(h):
        s, si = spd_sqrt(h)
        g = np.sum(wn * spd_log(si[..., None, :, :] @ points @ si[..., None, :, :]), axis=-3)
        return s, g, metric_norm(g)

    s, g, res = gradient(h)
    step = np.ones_like(res)
    history: List[float] = [float(np.max(res))]
    iterations = 0
    while np.max(res) > tol:
        if iterations >= max_iter:
            raise ConvergenceError(
                f"Karcher mean did not converge in {max_iter} iterations (residual {np.max(res):.3e})",
                history)
        iterations += 1
        candidate = det_normalize(s @ sym_exp(step[..., None, None] * g) @ s)
        sc, gc, resc = gradient(candidate)
        worse = resc > res
        accept = ~worse
        h = np.where(accept[..., None, None], candidate, h)
        s = np.where(accept[..., None, None], sc, s)
        g = np.where(accept[..., None, None], gc, g)
        res = np.where(accept, resc, res)
        step = np.where(worse, 0.5 * step, np.minimum(1.0, 2.0 * step))
        history.append(float(np.max(res)))
    return h, res, iterations


# ---------------------------------------------------------------------------
# Value types
# ---------------------------------------------------------------------------

def validate_spd(m: np.ndarray, det_tol: float = DET_TOL) -> None:
    """Raise DomainError unless m is a symmetric determinant-one SPD matrix."""
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise DomainError("matrix has non-finite entries")
    scale = max(1.0, float(np.max(np.abs(m))))
    if np.max(np.abs(m - m.T)) > SYMMETRY_TOL * scale:
        raise DomainError("matrix is not symmetric")
    w = np.linalg.eigvalsh(m)
    if w[0] <= 0:
        raise DomainError(f"matrix is not positive definite (smallest eigenvalue {w[0]:.3e})")
    logdet = float(np.sum(np.log(w)))
    # conditioning limits how well the determinant is representable
    if abs(logdet) > det_tol + 1e-15 * (w[-1] / w[0]):
        raise DomainError(f"matrix does not have determinant one (log det {logdet:.3e})")


@dataclass(frozen=True, eq=False)
class SpdPoint:
    """Point of Y_d; `factor` optionally holds A with m = A Aᵀ."""

    m: np.ndarray
    factor: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        m = np.asarray(self.m, dtype=float)
        validate_spd(m)
        object.__setattr__(self, 'm', m)

    @property
    def d(self) -> int:
        return self.m.shape[0]

    @classmethod
    def from_matrix(cls, m: np.ndarray, factor: Optional[np.ndarray] = None) -> 'SpdPoint':
        """Symmetrize and rescale to determinant one."""
        m = np.asarray(m, dtype=float)
        scale = math.exp(-np.linalg.slogdet(m)[1] / m.shape[0])
        if factor is not None:
            factor = np.asarray(factor, dtype=float) * math.sqrt(scale)
        return cls(sym(m) * scale, factor)

    @classmethod
    def identity(cls, d: int) -> 'SpdPoint':
        return cls(np.eye(d))

    @classmethod
    def diagonal(cls, v: Sequence[float]) -> 'SpdPoint':
        """exp(diag(v)) for trace-free log coordinates v."""
        v = np.asarray(v, dtype=float)
        return cls.from_matrix(np.diag(np.exp(v - v.mean())))

    @classmethod
    def random(cls, d: int, rng: np.random.Generator, scale: float = 1.0) -> 'SpdPoint':
        s = trace_free(sym(rng.normal(scale=scale, size=(d, d))))
        return cls.from_matrix(sym_exp(s))

    def act(self, g: np.ndarray) -> 'SpdPoint':
        """Congruence action of an invertible matrix."""
        g = np.asarray(g, dtype=float)
        factor = None if self.factor is None else g @ self.factor
        return SpdPoint.from_matrix(g @ self.m @ g.T, factor)

    def get_factor(self) -> np.ndarray:
        if self.factor is not None:
            return self.factor
        return np.linalg.cholesky(self.m)


@dataclass(frozen=True, eq=False)
class CartanVector:
    """Element of the closed positive Weyl chamber."""

    v: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.v, dtype=float)
        scale = max(1.0, float(np.max(np.abs(v)))) if v.size else 1.0
        if v.ndim != 1:
            raise DomainError("Cartan vector must be one-dimensional")
        if np.any(np.diff(v) > TRACE_TOL * scale):
            raise DomainError(f"Cartan vector is not sorted non-increasing: {v}")
        if abs(v.sum()) > TRACE_TOL * scale * v.size:
            raise DomainError(f"Cartan vector is not trace-free (sum {v.sum():.3e})")
        object.__setattr__(self, 'v', v)

    @classmethod
    def from_unsorted(cls, v: Sequence[float]) -> 'CartanVector':
        v = np.sort(np.asarray(v, dtype=float))[::-1]
        return cls(v - v.mean())

    @property
    def d(self) -> int:
        return self.v.size

    @property
    def norm(self) -> float:
        return float(KAPPA * np.linalg.norm(self.v))

    def roots(self) -> np.ndarray:
        """Simple roots in calibrated units, (v_i − v_{i+1}) / 2."""
        return 0.5 * (self.v[:-1] - self.v[1:])

    def opposite(self) -> 'CartanVector':
        """Image under the opposition involution −w₀."""
        return CartanVector(-self.v[::-1])

    def is_regular(self, tol: float = 0.0) -> bool:
        return bool(np.all(self.roots() > tol))


@dataclass(frozen=True, eq=False)
class TangentSym:
    """Body-frame tangent vector at `base`."""

    s: np.ndarray
    base: SpdPoint

    def __post_init__(self):
        s = np.asarray(self.s, dtype=float)
        scale = max(1.0, float(np.max(np.abs(s))))
        if np.max(np.abs(s - s.T)) > SYMMETRY_TOL * scale:
            raise DomainError("tangent vector is not symmetric")
        if abs(np.trace(s)) > TRACE_TOL * scale * s.shape[0]:
            raise DomainError("tangent vector is not trace-free")
        object.__setattr__(self, 's', s)

    @property
    def norm(self) -> float:
        return float(metric_norm(self.s))

    def scaled(self, c: float) -> 'TangentSym':
        return TangentSym(c * self.s, self.base)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def vector_distance(p: SpdPoint, q: SpdPoint) -> CartanVector:
    """Sorted log generalized eigenvalues of q relative to p."""
    w = scipy.linalg.eigh(q.m, p.m, eigvals_only=True)
    if np.any(w <= 0):
        raise DomainError("generalized eigenvalues are not positive")
    v = np.log(w)[::-1]
    return CartanVector(v - v.mean())


def distance(p: SpdPoint, q: SpdPoint) -> float:
    return vector_distance(p, q).norm


def geodesic(p: SpdPoint, q: SpdPoint, t: float) -> SpdPoint:
    """p^{1/2} (p^{-1/2} q p^{-1/2})^t p^{1/2}."""
    return SpdPoint.from_matrix(geodesic_array(p.m, q.m, float(t)))


def exp_map(v: TangentSym) -> SpdPoint:
    s, _ = spd_sqrt(v.base.m)
    return SpdPoint.from_matrix(s @ sym_exp(v.s) @ s)


def log_map(p: SpdPoint, q: SpdPoint) -> TangentSym:
    return TangentSym(trace_free(sym(body_log(p.m, q.m))), p)


def karcher_mean(points: Sequence[SpdPoint], weights: Optional[Sequence[float]] = None,
                 tol: float = 1e-10, max_iter: int = 200) -> SpdPoint:
    """Minimizer of Σ wᵢ d(·, pᵢ)²."""
    if not points:
        raise DomainError("Karcher mean of an empty family")
    stack = np.stack([p.m for p in points])
    w = np.ones(len(points)) if weights is None else np.asarray(weights, dtype=float)
    if w.shape != (len(points),):
        raise DomainError("one weight per point is required")
    mean, res, iterations = karcher_mean_array(stack, w, tol=tol, max_iter=max_iter)
    logger.debug(f"Karcher mean of {len(points)} points: {iterations} iterations, residual {float(res):.2e}")
    return SpdPoint.from_matrix(mean)


def sectional_curvature(a: np.ndarray, b: np.ndarray) -> float:
    """Curvature of the plane spanned by body-frame tangents a, b."""
    c = a @ b - b @ a
    gram = np.sum(a * a) * np.sum(b * b) - np.sum(a * b) ** 2
    if gram <= 0:
        raise DomainError("tangent vectors are linearly dependent")
    return float(-0.25 * np.sum(c * c) / gram / KAPPA ** 2)


def sampled_curvature(base: SpdPoint, a: np.ndarray, b: np.ndarray, eps: float = 0.02) -> float:
    """Curvature estimate from the side defect of a small right triangle.

    With legs of length ε along orthonormalized a, b, the third side c obeys
    c² ≈ 2ε² − (K/3)ε⁴ in curvature K.
    """
    a = trace_free(sym(np.asarray(a, dtype=float)))
    b = trace_free(sym(np.asarray(b, dtype=float)))
    ua = a / metric_norm(a)
    b = b - KAPPA ** 2 * np.sum(ua * b) * ua
    if metric_norm(b) < 1e-12:
        raise DomainError("tangent vectors are linearly dependent")
    ub = b / metric_norm(b)
    x = exp_map(TangentSym(eps * ua, base))
    y = exp_map(TangentSym(eps * ub, base))
    c = distance(x, y)
    return float(-3.0 * (c * c - 2.0 * eps * eps) / eps ** 4)
