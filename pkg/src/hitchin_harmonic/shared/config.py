"""
Run configuration and tolerances.
"""

import os
import json
import logging
from dataclasses import dataclass, field, asdict, fields, replace
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import jsonschema

from .errors import ConfigError

# Configure logging
logger = logging.getLogger(__name__)


@dataclass
class Tolerances:
    """Numerical tolerances and iteration caps used across the modules."""

    karcher_tol: float = 1e-10
    karcher_max_iter: int = 200
    solver_tol: float = 1e-8
    solver_max_sweeps: int = 100000
    busemann_horizon: float = 1e3
    busemann_tol: float = 1e-6
    cone_tol: float = 1e-6
    cone_starts: int = 8
    separation_tol: float = 1e-8
    transversality_tol: float = 1e-12
    positivity_tol: float = 0.0
    weight_floor: float = 1e-6
    stability_threshold: float = 1.0
    inequality_slack: float = 1e-9

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


TOLERANCE_SCHEMA = {
    "type": "object",
    "properties": {
        f.name: {"type": "integer" if f.type in (int, "int") else "number"}
        for f in fields(Tolerances)
    },
    "additionalProperties": False,
}

CONFIG_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "properties": {
        "d": {"type": "integer", "minimum": 2, "maximum": 6},
        "curve_path": {"type": ["string", "null"]},
        "window": {"type": "number", "exclusiveMinimum": 1},
        "delta": {"type": "number", "exclusiveMinimum": 0},
        "radii": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}, "minItems": 1},
        "radius": {"type": "number", "exclusiveMinimum": 0},
        "circle_samples": {"type": "integer", "minimum": 3},
        "mollify_rings": {"type": "integer", "minimum": 1},
        "pair_samples": {"type": "integer", "minimum": 1},
        "busemann_pairs": {"type": "integer", "minimum": 1},
        "eta_frames": {"type": "integer", "minimum": 1},
        "eta_types": {"type": "integer", "minimum": 1},
        "eta_restarts": {"type": "integer", "minimum": 0},
        "x_samples": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer", "minimum": 0},
        "output_dir": {"type": "string"},
        "pd_basepoint": {"enum": ["identity", "principal"]},
        "section": {"enum": ["upper", "symmetric"]},
        "allow_chart_flip": {"type": "boolean"},
        "performance_profile": {"type": "string"},
        "show_progress": {"type": "boolean"},
        "tolerances": TOLERANCE_SCHEMA,
    },
    "additionalProperties": False,
}

# Fields that do not change any numerical result
VOLATILE_FIELDS = ("output_dir", "show_progress", "performance_profile")

DEFAULT_RADII = (2.0, 4.0, 6.0)


@dataclass
class RunConfig:
    """Configuration for one pipeline run."""

    d: int = 3
    curve_path: Optional[Path] = None
    window: float = 32.0

    # Harmonic solver
    delta: float = 0.1
    radii: List[float] = field(default_factory=lambda: list(DEFAULT_RADII))
    mollify_rings: int = 3

    # Stability and sampling
    radius: float = 8.0
    circle_samples: int = 256
    pair_samples: int = 2000
    busemann_pairs: int = 1000
    eta_frames: int = 32
    eta_types: int = 8
    eta_restarts: int = 64
    x_samples: int = 4

    seed: int = 0
    output_dir: Path = Path("_out")

    pd_basepoint: str = "identity"
    section: str = "upper"
    allow_chart_flip: bool = True

    tolerances: Tolerances = field(default_factory=Tolerances)

    # Performance profiles
    PERFORMANCE_PROFILES = {
        'conservative': {'max_workers': 1},
        'balanced': {'max_workers': 4},
        'aggressive': {'max_workers': 8},
    }

    performance_profile: str = 'balanced'
    show_progress: bool = False

    def __post_init__(self):
        """Coerce paths and check invariants."""
        if isinstance(self.output_dir, str):
            self.output_dir = Path(self.output_dir)
        if isinstance(self.curve_path, str):
            self.curve_path = Path(self.curve_path)
        if isinstance(self.tolerances, dict):
            self.tolerances = Tolerances(**self.tolerances)
        self.radii = [float(r) for r in self.radii]

        if not 2 <= int(self.d) <= 6:
            raise ConfigError(f"d must lie in 2..6, got {self.d}", "d")
        if self.delta <= 0:
            raise ConfigError(f"delta must be positive, got {self.delta}", "delta")
        if any(b <= a for a, b in zip(self.radii, self.radii[1:])):
            raise ConfigError(f"radii must be increasing, got {self.radii}", "radii")
        if self.window <= 1:
            raise ConfigError("window must contain the normalisation points 0 and 1", "window")

    @property
    def reports_path(self) -> Path:
        """Path to JSON reports."""
        return self.output_dir / "reports"

    @property
    def tables_path(self) -> Path:
        """Path to CSV tables."""
        return self.output_dir / "tables"

    @property
    def cache_path(self) -> Path:
        """Path to the report hash manifest."""
        return self.output_dir / "cache"

    def ensure_directories(self):
        """Create all necessary directories."""
        for path in [self.reports_path, self.tables_path, self.cache_path]:
            path.mkdir(parents=True, exist_ok=True)

    @classmethod
    def from_env(cls) -> 'RunConfig':
        """Create config from environment variables."""
        return cls(
            d=int(os.getenv('HITCHIN_D', '3')),
            seed=int(os.getenv('HITCHIN_SEED', '0')),
            output_dir=os.getenv('HITCHIN_OUTPUT_DIR', '_out'),
            delta=float(os.getenv('HITCHIN_DELTA', '0.1')),
            window=float(os.getenv('HITCHIN_WINDOW', '32')),
            performance_profile=os.getenv('HITCHIN_PROFILE', 'balanced'),
            show_progress=os.getenv('HITCHIN_PROGRESS', 'false').lower() == 'true',
        )

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RunConfig':
        """Validate a configuration document and build the config."""
        validator = jsonschema.Draft7Validator(CONFIG_SCHEMA)
        errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
        if errors:
            first = errors[0]
            path = ".".join(str(p) for p in first.absolute_path) or "<root>"
            raise ConfigError(first.message, path)
        return cls(**data)

    @classmethod
    def from_json(cls, path: Path) -> 'RunConfig':
        """Load a JSON configuration file."""
        path = Path(path)
        try:
            with open(path, 'r') as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"invalid JSON in {path}: {e}", "<root>") from e
        return cls.from_dict(data)

    def with_overrides(self, **overrides) -> 'RunConfig':
        """Return a copy with CLI overrides applied; None values are ignored."""
        changes = {k: v for k, v in overrides.items() if v is not None}
        unknown = [k for k in changes if k not in {f.name for f in fields(self)}]
        if unknown:
            raise ConfigError(f"unknown override(s) {unknown}", unknown[0])
        return replace(self, **changes)

    def to_dict(self, include_volatile: bool = True) -> Dict[str, Any]:
        data = asdict(self)
        data["output_dir"] = str(self.output_dir)
        data["curve_path"] = str(self.curve_path) if self.curve_path else None
        if not include_volatile:
            for key in VOLATILE_FIELDS:
                data.pop(key, None)
        return data

    def rng(self, stream: str) -> np.random.Generator:
        """Generator for a named random stream derived from the config seed."""
        key = [int(b) for b in stream.encode('utf-8')]
        return np.random.default_rng(np.random.SeedSequence([int(self.seed)] + key))

    def get_performance_settings(self, profile: str = None) -> dict:
        """Get performance settings for a specific profile."""
        if profile is None:
            profile = self.performance_profile

        if profile not in self.PERFORMANCE_PROFILES:
            logger.warning(f"Unknown performance profile '{profile}', using 'balanced'")
            profile = 'balanced'

        return self.PERFORMANCE_PROFILES[profile].copy()
