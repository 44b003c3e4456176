#!/usr/bin/env python3
"""
Embedding commands: evaluate on a mesh, estimate constants, Morse defects.
"""

import math
import logging
from typing import Any, Dict, List

import numpy as np

from ..shared.config import RunConfig
from ..shared.export import ReportWriter
from ..hyp2.plane import I_POINT
from ..harmonic.mesh import build_mesh
from ..embedding.embedding import CurveEmbedding
from ..embedding.constants import (
    coarse_lipschitz_certificate, embedding_dump, estimate_constants, morse_defect, pair_table, section_growth,
)
from .inputs import load_curve, load_embedding

# Configure logging
logger = logging.getLogger(__name__)

MORSE_RANDOM_GEODESICS = 4


def run(config: RunConfig) -> Dict[str, Any]:
    """Evaluate f on the mesh of the largest configured radius and write it out."""
    e = load_embedding(config)
    mesh = build_mesh(config.radii[-1], config.delta, I_POINT, config.tolerances.weight_floor)
    logger.info(f"🚀 Evaluating d={e.d} embedding on {mesh.n_vertices} vertices")
    frame = embedding_dump(e, np.arange(mesh.n_vertices), mesh.z)

    other = CurveEmbedding(load_curve(config), "symmetric" if config.section == "upper" else "upper",
                           config.pd_basepoint)
    growth = section_growth(e, other, radii=[r for r in config.radii if r >= 2.0] or config.radii)

    writer = ReportWriter(config)
    writer.write_csv("embedding_vertices", frame)
    report = {
        "embedding": e.describe(),
        "radius": config.radii[-1],
        "delta": config.delta,
        "vertices": mesh.n_vertices,
        "section_independence": growth,
    }
    writer.write_json("embed_run", report)
    return report


def constants(config: RunConfig) -> Dict[str, Any]:
    """Sampled (L̂, M̂) with a fresh-sample Lipschitz certificate and the pair table."""
    e = load_embedding(config)
    estimate = estimate_constants(e, config.rng("embed_constants"), samples=config.pair_samples)
    certificate = coarse_lipschitz_certificate(e, estimate["L"], config.rng("embed_certificate"),
                                               samples=max(config.pair_samples // 4, 1))
    records = estimate.pop("records")
    writer = ReportWriter(config)
    writer.write_csv("embedding_pairs", pair_table(records))
    report = {"embedding": e.describe(), **estimate, "lipschitz_certificate": certificate}
    writer.write_json("embed_constants", report)
    return report


def morse(config: RunConfig) -> Dict[str, Any]:
    """Weyl-cone defects along (0, ∞), (−1, 1) and a few seeded geodesics, out to the largest radius."""
    e = load_embedding(config)
    rng = config.rng("embed_morse")
    endpoints: List[tuple] = [(0.0, math.inf), (-1.0, 1.0)]
    for _ in range(MORSE_RANDOM_GEODESICS):
        a, b = np.sort(rng.uniform(-4.0, 4.0, size=2))
        endpoints.append((float(a), float(b)))

    rows = []
    for a, b in endpoints:
        result = morse_defect(e, a, b, extent=config.radii[-1], tol=config.tolerances.cone_tol,
                              starts=config.tolerances.cone_starts, rng=rng)
        rows.append({"a": a, "b": b, "defect": result["defect"], "samples": result["samples"]})

    writer = ReportWriter(config)
    writer.write_csv("morse_defects", rows)
    report = {"embedding": e.describe(), "extent": config.radii[-1], "geodesics": rows,
              "max_defect": max(r["defect"] for r in rows)}
    writer.write_json("embed_morse", report)
    return report
