"""
Upper half-plane model of the hyperbolic plane.

Points are stored as (x, y) with y > 0; ideal points are extended reals with
``math.inf`` standing for ∞. Möbius maps act on both. Array helpers work on
complex numpy arrays so meshes and circle quadratures stay vectorised.
"""

import math
import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple, Union

import numpy as np

from ..shared.errors import DomainError

# Configure logging
logger = logging.getLogger(__name__)

INF = math.inf
ExtendedReal = float

DEFAULT_CIRCLE_SAMPLES = 256


def _homogeneous(t: ExtendedReal) -> np.ndarray:
    """Homogeneous coordinates of a point of ℝP¹; ∞ is (1, 0)."""
    if math.isinf(t):
        return np.array([1.0, 0.0])
    if math.isnan(t):
        raise DomainError("ideal point is NaN")
    return np.array([float(t), 1.0])


def _dehomogenize(v: np.ndarray) -> ExtendedReal:
    if abs(v[1]) <= 1e-300 * max(1.0, abs(v[0])):
        return INF
    return float(v[0] / v[1])


def _bracket(u: np.ndarray, v: np.ndarray) -> float:
    return float(u[0] * v[1] - u[1] * v[0])


def _same_ideal(s: ExtendedReal, t: ExtendedReal) -> bool:
    if math.isinf(s) or math.isinf(t):
        return math.isinf(s) and math.isinf(t)
    return s == t


@dataclass(frozen=True)
class HypPoint:
    """Point x + iy of the upper half-plane."""

    x: float
    y: float

    def __post_init__(self):
        if not (np.isfinite(self.x) and np.isfinite(self.y)) or self.y <= 0:
            raise DomainError(f"not a point of the upper half-plane: ({self.x}, {self.y})")

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)

    @classmethod
    def from_complex(cls, z: complex) -> 'HypPoint':
        return cls(float(np.real(z)), float(np.imag(z)))


I_POINT = HypPoint(0.0, 1.0)


@dataclass(frozen=True)
class Mobius:
    """Real 2×2 matrix acting by fractional linear transformations."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        if self.det == 0:
            raise DomainError("singular Möbius matrix")

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=float)

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> 'Mobius':
        m = np.asarray(m, dtype=float)
        return cls(float(m[0, 0]), float(m[0, 1]), float(m[1, 0]), float(m[1, 1]))

    @classmethod
    def identity(cls) -> 'Mobius':
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def random(cls, rng: np.random.Generator, scale: float = 1.0) -> 'Mobius':
        """Random orientation-preserving map with determinant 1."""
        m = rng.normal(scale=scale, size=(2, 2))
        while abs(np.linalg.det(m)) < 1e-3:
            m = rng.normal(scale=scale, size=(2, 2))
        if np.linalg.det(m) < 0:
            m[:, 0] *= -1
        return cls.from_matrix(m / math.sqrt(np.linalg.det(m)))

    def normalized(self) -> 'Mobius':
        """Representative with determinant ±1."""
        return Mobius.from_matrix(self.matrix / math.sqrt(abs(self.det)))

    def compose(self, other: 'Mobius') -> 'Mobius':
        """self ∘ other."""
        return Mobius.from_matrix(self.matrix @ other.matrix)

    def inverse(self) -> 'Mobius':
        return Mobius(self.d, -self.b, -self.c, self.a)

    def apply(self, p: HypPoint) -> HypPoint:
        """Action on the upper half-plane (requires positive determinant)."""
        if self.det < 0:
            raise DomainError("orientation-reversing matrix does not preserve the upper half-plane")
        return HypPoint.from_complex(self.apply_complex(p.z))

    def apply_complex(self, z: Union[complex, np.ndarray]) -> Union[complex, np.ndarray]:
        return (self.a * z + self.b) / (self.c * z + self.d)

    def apply_ideal(self, t: ExtendedReal) -> ExtendedReal:
        return _dehomogenize(self.matrix @ _homogeneous(t))

    def apply_triple(self, triple: 'IdealTriple') -> 'IdealTriple':
        return IdealTriple(*(self.apply_ideal(t) for t in triple.points))


@dataclass(frozen=True)
class IdealTriple:
    """Pairwise distinct triple of points of ℝP¹."""

    t1: ExtendedReal
    t2: ExtendedReal
    t3: ExtendedReal
    orientation: int = field(init=False, compare=False)

    def __post_init__(self):
        pts = (self.t1, self.t2, self.t3)
        for i in range(3):
            for j in range(i + 1, 3):
                if _same_ideal(pts[i], pts[j]):
                    raise DomainError(f"ideal triple has coincident points {pts}")
        h = [_homogeneous(t) for t in pts]
        sign = _bracket(h[0], h[1]) * _bracket(h[1], h[2]) * _bracket(h[2], h[0])
        object.__setattr__(self, 'orientation', 1 if sign > 0 else -1)

    @property
    def points(self) -> Tuple[ExtendedReal, ExtendedReal, ExtendedReal]:
        return (self.t1, self.t2, self.t3)

    @property
    def positively_oriented(self) -> bool:
        """True when t1 < t2 < t3 in the cyclic order of ℝP¹."""
        return self.orientation > 0


def hyp_distance(p: HypPoint, q: HypPoint) -> float:
    """Curvature −1 distance."""
    return float(hyp_distance_array(p.z, q.z))


def hyp_distance_array(z: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Vectorised distance between complex arrays of upper half-plane points."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    # asinh form keeps full relative accuracy for nearby points
    return 2.0 * np.arcsinh(np.abs(z - w) / (2.0 * np.sqrt(z.imag * w.imag)))


def cross_ratio(t: Sequence[ExtendedReal]) -> ExtendedReal:
    """Cross ratio normalised by CR(x, 0, 1, ∞) = x."""
    if len(t) != 4:
        raise DomainError("cross ratio needs four points")
    for i in range(4):
        for j in range(i + 1, 4):
            if _same_ideal(t[i], t[j]):
                raise DomainError(f"cross ratio of coincident points {tuple(t)}")
    a, b, c, d = (_homogeneous(s) for s in t)
    return _bracket(a, b) * _bracket(c, d) / (_bracket(a, d) * _bracket(c, b))


def frame_of_triple(triple: IdealTriple) -> Mobius:
    """Positive-determinant map sending (0, ±1, ∞) to the triple."""
    h1, h2, h3 = (_homogeneous(t) for t in triple.points)
    # columns: image of ∞ is h3, image of 0 is h1, image of 1 is h2
    alpha, beta = np.linalg.solve(np.column_stack([h3, h1]), h2)
    g = np.column_stack([alpha * h3, beta * h1])
    if np.linalg.det(g) < 0:
        g[:, 0] *= -1
    return Mobius.from_matrix(g).normalized()


def foot_point(triple: IdealTriple) -> HypPoint:
    """Foot of the perpendicular from t2 onto the geodesic (t1, t3)."""
    return frame_of_triple(triple).apply(I_POINT)


def affine_frame(z: HypPoint) -> Mobius:
    """Upper-triangular positive-diagonal map g_z with g_z·i = z."""
    s = math.sqrt(z.y)
    return Mobius(s, z.x / s, 0.0, 1.0 / s)


def section(z: HypPoint, kind: str = "upper") -> IdealTriple:
    """Triple over z: (x, x+y, ∞) for "upper", (x−y, x, x+y) for "symmetric"."""
    if kind == "upper":
        return IdealTriple(z.x, z.x + z.y, INF)
    if kind == "symmetric":
        return IdealTriple(z.x - z.y, z.x, z.x + z.y)
    raise DomainError(f"unknown section kind '{kind}'")


def point_at(center: HypPoint, r: float, theta: Union[float, np.ndarray]) -> np.ndarray:
    """exp_center(r·e^{iθ}) as complex values."""
    w = math.tanh(r / 2.0) * np.exp(1j * np.asarray(theta, dtype=float))
    z = 1j * (1.0 + w) / (1.0 - w)
    return affine_frame(center).apply_complex(z)


def circle_points(center: HypPoint, r: float, n: int = DEFAULT_CIRCLE_SAMPLES) -> List[HypPoint]:
    """n equally spaced points on the geodesic circle of radius r."""
    return [HypPoint.from_complex(z) for z in circle_array(center, r, n)]


def circle_array(center: HypPoint, r: float, n: int = DEFAULT_CIRCLE_SAMPLES) -> np.ndarray:
    if r <= 0:
        raise DomainError(f"circle radius must be positive, got {r}")
    if n < 3:
        raise DomainError(f"circle needs at least 3 samples, got {n}")
    return point_at(center, r, 2.0 * np.pi * np.arange(n) / n)


def circle_weights(n: int) -> np.ndarray:
    """Uniform hitting-measure weights from the centre of a ball."""
    return np.full(n, 1.0 / n)


def disk_samples(center: HypPoint, radius: float, rings: int) -> Tuple[np.ndarray, np.ndarray]:
    """Weighted quasi-uniform samples of the closed ball B(center, radius).

    Ring j sits at the midpoint radius of the j-th annulus and carries the
    annulus area, split evenly over its points. Weights sum to 1.
    """
    if radius <= 0 or rings < 1:
        raise DomainError("disk samples need a positive radius and at least one ring")
    width = radius / rings
    points = [np.array([center.z])]
    # central disk of radius width/2
    weights = [np.array([2.0 * np.pi * (math.cosh(width / 2.0) - 1.0)])]
    for j in range(1, rings + 1):
        inner = min(radius, (j - 0.5) * width)
        outer = min(radius, (j + 0.5) * width)
        if outer <= inner:
            break
        rho = 0.5 * (inner + outer)
        count = max(6, int(math.ceil(2.0 * np.pi * math.sinh(rho) / width)))
        area = 2.0 * np.pi * (math.cosh(outer) - math.cosh(inner))
        points.append(point_at(center, rho, 2.0 * np.pi * np.arange(count) / count))
        weights.append(np.full(count, area / count))
    w = np.concatenate(weights)
    return np.concatenate(points), w / w.sum()


def rotation_about(z: HypPoint, theta: float) -> Mobius:
    """Elliptic map fixing z and turning tangent vectors at z by θ."""
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    g = affine_frame(z)
    return g.compose(Mobius(c, s, -s, c)).compose(g.inverse()).normalized()


def chart_flip(t: ExtendedReal) -> ExtendedReal:
    """t ↦ −1/t on ℝP¹."""
    if math.isinf(t):
        return 0.0
    if t == 0:
        return INF
    return -1.0 / t
