"""
Maps ℍ² → Y_d: the curve-driven embedding p_d ∘ φ³ ∘ s and model embeddings.

Every embedding produces factors A(z) with f(z) = A(z) A(z)ᵀ and det A = ±1.
Distances between far points are computed from the relative factor
A(z₁)⁻¹ A(z₂), which curve embeddings assemble directly from the flow.
"""

import math
import logging
import threading
from abc import ABC, abstractmethod
from typing import Dict, Sequence

import numpy as np
import mpmath

from ..shared.errors import DomainError, RangeError
from ..hyp2.plane import HypPoint, section as hyp_section
from ..spd.geometry import CartanVector, SpdPoint
from ..flags.triples import flat_basepoint, project_pd
from ..flags.flag import superdiagonal_matrix
from ..curves.curve import PositiveCurve, veronese_curve

# Configure logging
logger = logging.getLogger(__name__)

# relative factors beyond this condition estimate go through extended precision
EXTENDED_PRECISION_NORM = 1e3


def _as_complex(z) -> np.ndarray:
    if isinstance(z, HypPoint):
        return np.asarray(z.z, dtype=complex)
    return np.asarray(z, dtype=complex)


def log_singular_values(b: np.ndarray) -> np.ndarray:
    """Descending 2·log σ(B): the vector distance from A to A·B."""
    s = np.linalg.svd(b, compute_uv=False)
    v = 2.0 * np.log(s)
    return v - v.mean()


def _mp_log_singular_values(b, d: int) -> np.ndarray:
    s = mpmath.svd_r(b, compute_uv=False)
    v = np.array([float(2 * mpmath.log(s[i])) for i in range(d)])
    v = np.sort(v)[::-1]
    return v - v.mean()


class Embedding(ABC):
    """Coarse map ℍ² → Y_d given by factors."""

    def __init__(self, d: int):
        self.d = d
        self._cache: Dict[int, SpdPoint] = {}
        self._lock = threading.Lock()

    @abstractmethod
    def factors(self, z) -> np.ndarray:
        """Factors A(z), shape z.shape + (d, d)."""

    def evaluate_array(self, z) -> np.ndarray:
        a = self.factors(z)
        return a @ np.swapaxes(a, -1, -2)

    def evaluate(self, z: HypPoint) -> SpdPoint:
        a = self.factors(z.z)
        return SpdPoint.from_matrix(a @ a.T, a)

    def relative(self, z1, z2) -> np.ndarray:
        """A(z₁)⁻¹ A(z₂)."""
        return np.linalg.solve(self.factors(z1), self.factors(z2))

    def relative_extended(self, z1: complex, z2: complex, dps: int):
        """A(z₁)⁻¹ A(z₂) as an mpmath matrix; the default lifts the double result."""
        return mpmath.matrix(self.relative(z1, z2).tolist())

    def vector_distance(self, z1: complex, z2: complex) -> CartanVector:
        b = self.relative(z1, z2)
        norm = float(np.linalg.norm(b))
        if norm < EXTENDED_PRECISION_NORM:
            return CartanVector(log_singular_values(b))
        # |det B| = 1 bounds the least singular value below by norm^{1−d}
        dps = 30 + int(self.d * math.log10(norm)) + 10
        with mpmath.workdps(dps):
            v = _mp_log_singular_values(self.relative_extended(z1, z2, dps), self.d)
        return CartanVector(v)

    def distance(self, z1: complex, z2: complex) -> float:
        return self.vector_distance(z1, z2).norm

    def evaluate_vertices(self, vertex_ids: Sequence[int], z: np.ndarray) -> Dict[int, SpdPoint]:
        """Evaluate and cache values by mesh vertex id."""
        missing = [i for i, v in enumerate(vertex_ids) if v not in self._cache]
        if missing:
            a = self.factors(np.asarray(z)[missing])
            with self._lock:
                for j, i in enumerate(missing):
                    self._cache[vertex_ids[i]] = SpdPoint.from_matrix(a[j] @ a[j].T, a[j])
        return {v: self._cache[v] for v in vertex_ids}

    def clear_cache(self):
        with self._lock:
            self._cache.clear()

    def describe(self) -> dict:
        return {"kind": type(self).__name__, "d": self.d}


class CurveEmbedding(Embedding):
    """f = p_d ∘ φ³ ∘ s for a positive curve φ."""

    def __init__(self, curve: PositiveCurve, section: str = "upper", basepoint: str = "identity"):
        super().__init__(curve.d)
        if section not in ("upper", "symmetric"):
            raise DomainError(f"unknown section '{section}'")
        self.curve = curve
        self.section = section
        self.basepoint = basepoint
        self._o_sqrt = np.sqrt(np.diag(flat_basepoint(curve.d, basepoint)))

    def describe(self) -> dict:
        return {**super().describe(), "section": self.section, "basepoint": self.basepoint,
                "window": self.curve.window}

    def _check_range(self, *params: np.ndarray):
        if self.curve.allow_flip:
            return
        lo, hi = self.curve.breakpoints[0], self.curve.breakpoints[-1]
        for p in params:
            if np.any((p < lo) | (p > hi)):
                raise RangeError(f"section parameters leave the direct chart [{lo}, {hi}] with the chart flip disabled")

    def _upper_parts(self, z: np.ndarray):
        """(n(x), h, scale) with A = n(x) diag(1/h) o^{1/2} / scale."""
        x, y = z.real, z.imag
        if np.any(y <= 0):
            raise DomainError("points must lie in the upper half-plane")
        self._check_range(x, x + y)
        m = self.curve.transition(x, x + y)
        sup = np.diagonal(m, offset=1, axis1=-2, axis2=-1)
        h = np.concatenate([np.ones(x.shape + (1,)), np.cumprod(sup, axis=-1)], axis=-1)
        scale = np.asarray(np.prod(np.abs(h), axis=-1) ** (-1.0 / self.d))
        return self.curve.transition(np.zeros_like(x), x), h, scale

    def factors(self, z) -> np.ndarray:
        z = _as_complex(z)
        if self.section == "upper":
            nx, h, scale = self._upper_parts(z)
            return (nx / h[..., None, :]) * (self._o_sqrt / scale[..., None])[..., None, :]
        flat = z.reshape(-1)
        out = np.empty((flat.size, self.d, self.d))
        for k, zk in enumerate(flat):
            triple = hyp_section(HypPoint.from_complex(zk), "symmetric")
            self._check_range(np.array(triple.points))
            p = project_pd(*(self.curve.eval_flag(t) for t in triple.points), basepoint=self.basepoint)
            out[k] = p.factor
        return out.reshape(z.shape + (self.d, self.d))

    def relative(self, z1, z2) -> np.ndarray:
        if self.section != "upper":
            return super().relative(z1, z2)
        z1, z2 = _as_complex(z1), _as_complex(z2)
        _, h1, s1 = self._upper_parts(z1)
        _, h2, s2 = self._upper_parts(z2)
        t = self.curve.transition(z1.real, z2.real)
        left = h1 / self._o_sqrt
        right = self._o_sqrt / h2
        return left[..., :, None] * t * right[..., None, :] * (s1 / s2)[..., None, None]

    def _mp_transition(self, a: float, b: float):
        """n(a)⁻¹ n(b) in extended precision (a ≤ b or a > b)."""
        d = self.d
        lo, hi = min(a, b), max(a, b)
        out = mpmath.eye(d)
        for seg_lo, seg_hi, c in self.curve._segments():
            length = min(hi, seg_hi) - max(lo, seg_lo)
            if length <= 0:
                continue
            nil = mpmath.matrix(superdiagonal_matrix(length * np.asarray(c)).tolist())
            term, step = mpmath.eye(d), mpmath.eye(d)
            for j in range(1, d):
                term = term * nil / j
                step = step + term
            out = out * step
        return out if b >= a else mpmath.inverse(out)

    def relative_extended(self, z1: complex, z2: complex, dps: int):
        if self.section != "upper":
            return super().relative_extended(z1, z2, dps)
        x1, y1, x2, y2 = z1.real, z1.imag, z2.real, z2.imag
        m1 = self._mp_transition(x1, x1 + y1)
        m2 = self._mp_transition(x2, x2 + y2)
        d = self.d
        h1, h2 = [mpmath.mpf(1)], [mpmath.mpf(1)]
        for i in range(d - 1):
            h1.append(h1[-1] * m1[i, i + 1])
            h2.append(h2[-1] * m2[i, i + 1])
        s1 = abs(mpmath.fprod(h1)) ** (mpmath.mpf(-1) / d)
        s2 = abs(mpmath.fprod(h2)) ** (mpmath.mpf(-1) / d)
        t = self._mp_transition(x1, x2)
        out = mpmath.matrix(d, d)
        for i in range(d):
            for j in range(d):
                out[i, j] = h1[i] / mpmath.mpf(self._o_sqrt[i]) * t[i, j] * mpmath.mpf(self._o_sqrt[j]) / h2[j] * s1 / s2
        return out


class IdentityEmbedding(Embedding):
    """d = 2: z ↦ [[y + x²/y, x/y], [x/y, 1/y]], an isometry onto Y₂."""

    def __init__(self):
        super().__init__(2)

    def factors(self, z) -> np.ndarray:
        z = _as_complex(z)
        s = np.sqrt(z.imag)
        out = np.zeros(z.shape + (2, 2))
        out[..., 0, 0] = s
        out[..., 0, 1] = z.real / s
        out[..., 1, 1] = 1.0 / s
        return out

    def relative(self, z1, z2) -> np.ndarray:
        # affine factors: A₁⁻¹A₂ is the affine map taking z₁ to z₂ frames
        z1, z2 = _as_complex(z1), _as_complex(z2)
        s1, s2 = np.sqrt(z1.imag), np.sqrt(z2.imag)
        out = np.zeros(np.broadcast(z1, z2).shape + (2, 2))
        out[..., 0, 0] = s2 / s1
        out[..., 0, 1] = (z2.real - z1.real) / (s1 * s2)
        out[..., 1, 1] = s1 / s2
        return out


class ProductEmbedding(Embedding):
    """ℍ² × {pt} ⊂ Y₃: z ↦ blockdiag(P₂(z), 1)."""

    def __init__(self):
        super().__init__(3)
        self._plane = IdentityEmbedding()

    def factors(self, z) -> np.ndarray:
        a2 = self._plane.factors(z)
        out = np.zeros(a2.shape[:-2] + (3, 3))
        out[..., :2, :2] = a2
        out[..., 2, 2] = 1.0
        return out

    def relative(self, z1, z2) -> np.ndarray:
        b2 = self._plane.relative(z1, z2)
        out = np.zeros(b2.shape[:-2] + (3, 3))
        out[..., :2, :2] = b2
        out[..., 2, 2] = 1.0
        return out


class ConstantEmbedding(Embedding):
    """z ↦ p."""

    def __init__(self, p: SpdPoint):
        super().__init__(p.d)
        self._a = p.get_factor()

    def factors(self, z) -> np.ndarray:
        z = _as_complex(z)
        return np.broadcast_to(self._a, z.shape + self._a.shape).copy()


class TransformedEmbedding(Embedding):
    """g·f for an invertible g acting by congruence."""

    def __init__(self, base: Embedding, g: np.ndarray):
        super().__init__(base.d)
        g = np.asarray(g, dtype=float)
        self.base = base
        self.g = g / abs(np.linalg.det(g)) ** (1.0 / base.d)

    def factors(self, z) -> np.ndarray:
        return self.g @ self.base.factors(z)

    def relative(self, z1, z2) -> np.ndarray:
        return self.base.relative(z1, z2)

    def relative_extended(self, z1, z2, dps):
        return self.base.relative_extended(z1, z2, dps)


def identity_embedding() -> IdentityEmbedding:
    return IdentityEmbedding()


def veronese_embedding(d: int, basepoint: str = "identity", window: float = 32.0,
                       section: str = "upper") -> CurveEmbedding:
    return CurveEmbedding(veronese_curve(d, window), section=section, basepoint=basepoint)


def product_embedding() -> ProductEmbedding:
    return ProductEmbedding()


def build_embedding(curve: PositiveCurve, section: str = "upper", basepoint: str = "identity") -> CurveEmbedding:
    """EmbeddingHandle for a curve; d = 2 identity data reproduce the identity map."""
    return CurveEmbedding(curve, section, basepoint)
