"""
Curve and embedding inputs resolved from a run configuration.
"""

import logging
from typing import List, Tuple

from ..shared.config import RunConfig
from ..shared.errors import ConfigError
from ..curves.homeo import PiecewiseMonotone, load_curve_spec
from ..curves.curve import PositiveCurve, build_curve
from ..embedding.embedding import CurveEmbedding, build_embedding

# Configure logging
logger = logging.getLogger(__name__)


def load_maps(config: RunConfig) -> Tuple[List[PiecewiseMonotone], float]:
    """Monotone maps from config.curve_path; all identities (the Veronese curve) when unset."""
    if config.curve_path is None:
        logger.info(f"No curve file configured; using the Veronese curve for d={config.d}")
        return [PiecewiseMonotone.identity() for _ in range(config.d - 1)], config.window
    phis, window = load_curve_spec(config.curve_path)
    if len(phis) + 1 != config.d:
        raise ConfigError(f"curve file has d={len(phis) + 1} but the run uses d={config.d}", "d")
    return phis, window if window is not None else config.window


def load_curve(config: RunConfig) -> PositiveCurve:
    phis, window = load_maps(config)
    return build_curve(phis, window, allow_flip=config.allow_chart_flip)


def load_embedding(config: RunConfig) -> CurveEmbedding:
    return build_embedding(load_curve(config), config.section, config.pd_basepoint)
