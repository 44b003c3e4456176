"""
Piecewise-linear monotone homeomorphisms of ℝ and the curve input format.
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import jsonschema

from ..shared.errors import ConfigError, DomainError

# Configure logging
logger = logging.getLogger(__name__)

NORMALIZATION_TOL = 1e-12

CURVE_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["d", "breakpoints", "values"],
    "properties": {
        "d": {"type": "integer", "minimum": 2, "maximum": 6},
        "breakpoints": {"type": "array", "items": {"type": "number"}, "minItems": 2},
        "values": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "number"}, "minItems": 2},
            "minItems": 1,
        },
        "window": {"type": "number", "exclusiveMinimum": 1},
    },
    "additionalProperties": False,
}


@dataclass(frozen=True, eq=False)
class PiecewiseMonotone:
    """Monotone piecewise-linear map with affine extension beyond its ends.

    Args:
        breakpoints: Strictly increasing parameters
        values: Values at the breakpoints, strictly increasing unless
            ``strict`` is False (then non-decreasing)
        strict: Whether flat pieces are rejected
    """

    breakpoints: np.ndarray
    values: np.ndarray
    strict: bool = True

    def __post_init__(self):
        t = np.asarray(self.breakpoints, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.ndim != 1 or t.shape != v.shape or t.size < 2:
            raise DomainError("breakpoints and values must be matching 1-D lists of length ≥ 2")
        if not np.all(np.isfinite(t)) or not np.all(np.isfinite(v)):
            raise DomainError("breakpoints and values must be finite")
        if np.any(np.diff(t) <= 0):
            raise DomainError("breakpoints must be strictly increasing")
        dv = np.diff(v)
        if np.any(dv < 0) or (self.strict and np.any(dv == 0)):
            raise DomainError("values must be strictly increasing")
        if np.diff(v)[0] == 0 or np.diff(v)[-1] == 0:
            raise DomainError("end pieces must be strictly increasing")
        object.__setattr__(self, 'breakpoints', t)
        object.__setattr__(self, 'values', v)

    @property
    def slopes(self) -> np.ndarray:
        return np.diff(self.values) / np.diff(self.breakpoints)

    @property
    def end_slopes(self) -> Tuple[float, float]:
        s = self.slopes
        return float(s[0]), float(s[-1])

    @property
    def is_normalized(self) -> bool:
        return (abs(float(self(0.0))) <= NORMALIZATION_TOL and abs(float(self(1.0)) - 1.0) <= NORMALIZATION_TOL
                and np.any(self.breakpoints == 0.0) and np.any(self.breakpoints == 1.0))

    def __call__(self, t: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        t = np.asarray(t, dtype=float)
        lo_slope, hi_slope = self.end_slopes
        out = np.interp(t, self.breakpoints, self.values)
        out = np.where(t < self.breakpoints[0], self.values[0] + lo_slope * (t - self.breakpoints[0]), out)
        out = np.where(t > self.breakpoints[-1], self.values[-1] + hi_slope * (t - self.breakpoints[-1]), out)
        return out if out.ndim else float(out)

    def slope_at(self, t: float, side: str = "right") -> float:
        """One-sided slope at t."""
        idx = np.searchsorted(self.breakpoints, t, side=side) - 1
        s = self.slopes
        return float(s[int(np.clip(idx, 0, s.size - 1))])

    def normalized(self) -> 'PiecewiseMonotone':
        """Affinely renormalized copy with value 0 at 0 and 1 at 1."""
        t = np.union1d(self.breakpoints, [0.0, 1.0])
        v = np.asarray(self(t))
        v0, v1 = float(self(0.0)), float(self(1.0))
        return PiecewiseMonotone(t, (v - v0) / (v1 - v0), self.strict)

    def blend(self, other: 'PiecewiseMonotone', eps: float) -> 'PiecewiseMonotone':
        """(1 − ε)·self + ε·other on the common refinement."""
        t = np.union1d(self.breakpoints, other.breakpoints)
        return PiecewiseMonotone(t, (1.0 - eps) * np.asarray(self(t)) + eps * np.asarray(other(t)),
                                 self.strict and other.strict)

    @classmethod
    def identity(cls) -> 'PiecewiseMonotone':
        return cls(np.array([0.0, 1.0]), np.array([0.0, 1.0]))

    @classmethod
    def power(cls, exponent: float, extent: int = 8) -> 'PiecewiseMonotone':
        """PL interpolation of t ↦ sign(t)|t|^a at the integers in [−extent, extent]."""
        t = np.arange(-extent, extent + 1, dtype=float)
        return cls(t, np.sign(t) * np.abs(t) ** exponent)

    def to_dict(self) -> dict:
        return {"breakpoints": self.breakpoints.tolist(), "values": self.values.tolist()}


def random_homeomorphism(rng: np.random.Generator, window: float = 32.0, pieces: int = 12,
                         log_slope_sigma: float = 0.5) -> PiecewiseMonotone:
    """Seeded normalized PL homeomorphism with log-normal slopes.

    Breakpoints are uniform in the window plus 0 and 1; slopes have bounded
    log-ratios, so the map is quasisymmetric.
    """
    inner = rng.uniform(-window * 0.9, window * 0.9, size=max(pieces - 2, 0))
    t = np.unique(np.concatenate([inner, [0.0, 1.0, -window, window]]))
    slopes = np.exp(rng.normal(scale=log_slope_sigma, size=t.size - 1))
    v = np.concatenate([[0.0], np.cumsum(slopes * np.diff(t))])
    return PiecewiseMonotone(t, v).normalized()


def load_curve_spec(path: Union[str, Path]) -> Tuple[List[PiecewiseMonotone], Optional[float]]:
    """Read a curve file: d, shared breakpoints, one value list per map, optional window."""
    path = Path(path)
    try:
        with open(path, 'r') as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read curve file {path}: {e}", "curve_path") from e

    validator = jsonschema.Draft7Validator(CURVE_SCHEMA)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        first = errors[0]
        where = ".".join(str(p) for p in first.absolute_path) or "<root>"
        raise ConfigError(first.message, f"curve.{where}")

    d = data["d"]
    if len(data["values"]) != d - 1:
        raise ConfigError(f"expected {d - 1} value lists for d = {d}, got {len(data['values'])}", "curve.values")
    phis = [PiecewiseMonotone(data["breakpoints"], values) for values in data["values"]]
    for i, phi in enumerate(phis):
        if not phi.is_normalized:
            raise DomainError(f"map {i + 1} is not normalized (needs φ(0) = 0 and φ(1) = 1 at breakpoints)")
    logger.info(f"📁 Loaded curve data from {path}: d={d}, {len(data['breakpoints'])} breakpoints")
    return phis, data.get("window")


def write_curve_spec(path: Union[str, Path], phis: Sequence[PiecewiseMonotone], window: Optional[float] = None):
    """Write maps on their common breakpoints in the curve file format."""
    t = phis[0].breakpoints
    for phi in phis[1:]:
        t = np.union1d(t, phi.breakpoints)
    data = {"d": len(phis) + 1, "breakpoints": t.tolist(), "values": [np.asarray(phi(t)).tolist() for phi in phis]}
    if window is not None:
        data["window"] = float(window)
    with open(path, 'w') as f:
        json.dump(data, f, indent=2)
