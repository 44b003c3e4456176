#!/usr/bin/env python3
"""
Stability commands: certificate at scale r and the drift proxy over radii.
"""

import logging
from typing import Any, Dict, Optional

from ..shared.config import RunConfig
from ..shared.export import ReportWriter
from ..embedding.constants import estimate_constants
from ..stability.eta import EtaSampler
from ..stability.certificates import certify as certify_scale, drift_proxy, sample_centres
from .inputs import load_embedding

# Configure logging
logger = logging.getLogger(__name__)


def _setup(config: RunConfig, with_constants: bool):
    e = load_embedding(config)
    centres = sample_centres(config.rng("stability_centres"), config.x_samples)
    sampler = EtaSampler(e.d, frames=config.eta_frames, types=config.eta_types, restarts=config.eta_restarts)
    seed = int(config.rng("stability_eta").integers(2 ** 32))
    m_hat: Optional[float] = None
    if with_constants:
        m_hat = estimate_constants(e, config.rng("embed_constants"), samples=config.pair_samples)["M"]
    workers = config.get_performance_settings()["max_workers"]
    return e, centres, sampler, seed, m_hat, workers


def certify(config: RunConfig, with_constants: bool = True) -> Dict[str, Any]:
    """Stability certificate at config.radius with the (x, r, η, S) table."""
    e, centres, sampler, seed, m_hat, workers = _setup(config, with_constants)
    logger.info(f"🚀 Certifying stability of d={e.d} embedding at r={config.radius:g} "
                f"over {len(centres)} centres ({workers} workers)")
    report = certify_scale(e, centres, config.radius, sampler, seed, n=config.circle_samples,
                           threshold=config.tolerances.stability_threshold, m_hat=m_hat, max_workers=workers)
    writer = ReportWriter(config)
    writer.write_csv("stability_samples", report.rows())
    payload = {"embedding": e.describe(), **report.to_dict()}
    writer.write_json("stability_certify", payload)
    return payload


def drift(config: RunConfig, with_constants: bool = True) -> Dict[str, Any]:
    """inf S/r over config.radii against 1/(M̂(d−1))."""
    e, centres, sampler, seed, m_hat, workers = _setup(config, with_constants)
    result = drift_proxy(e, centres, config.radii, sampler, seed, n=config.circle_samples, m_hat=m_hat,
                         max_workers=workers)
    writer = ReportWriter(config)
    writer.write_csv("stability_drift", [{"r": r, "inf_S_over_r": v}
                                         for r, v in zip(result["radii"], result["inf_S_over_r"])])
    payload = {"embedding": e.describe(), "m_hat": m_hat, **result}
    writer.write_json("stability_drift", payload)
    return payload
