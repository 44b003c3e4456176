#!/usr/bin/env python3
"""
Curve commands: build, quasisymmetry checks, non-transversality counts.
"""

import math
import logging
from pathlib import Path
from typing import Any, Dict, List

import numpy as np

from ..shared.config import RunConfig
from ..shared.export import ReportWriter
from ..shared.logging_utils import progress
from ..curves.homeo import write_curve_spec
from ..curves.curve import PositiveCurve
from ..curves.quasisymmetry import qs_constant, curve_qs_constant
from ..curves.sampling import positivity_sweep
from ..curves.transversality import count_nontransverse
from .inputs import load_maps, load_curve

# Configure logging
logger = logging.getLogger(__name__)

VERONESE_PROBES = (-3.0, -0.5, 0.0, 0.75, 2.0, 5.0)


def veronese_error(curve: PositiveCurve) -> float:
    """max |n_{i,i+j}(t) − t^j/j!| over a few probe parameters."""
    d = curve.d
    worst = 0.0
    for t in VERONESE_PROBES:
        expected = np.zeros((d, d))
        for i in range(d):
            for j in range(d - i):
                expected[i, i + j] = t ** j / math.factorial(j)
        worst = max(worst, float(np.max(np.abs(curve.n(t) - expected))))
    return worst


def build(config: RunConfig, samples: int = 200) -> Dict[str, Any]:
    """Write the curve file for the configured maps and sweep sampled triples for positivity."""
    phis, window = load_maps(config)
    curve = load_curve(config)
    path = Path(config.output_dir) / "curve.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    write_curve_spec(path, phis, window)
    logger.info(f"📁 Wrote curve file {path}")

    sweep = positivity_sweep(curve, config.rng("curve_positivity"), samples=samples)
    is_veronese = all(np.allclose(np.asarray(phi(phi.breakpoints)), phi.breakpoints) and
                      np.allclose(phi.end_slopes, 1.0) for phi in phis)
    report = {
        "d": curve.d,
        "window": window,
        "breakpoints": int(curve.breakpoints.size),
        "zero_slope_segments": curve.zero_slope_segments,
        "chart_gluing_defect": curve.chart_gluing_defect(),
        "positivity": sweep,
        "veronese_error": veronese_error(curve) if is_veronese else None,
        "curve_file": str(path),
        "status": "PASS" if not sweep["failures"] else "FAIL",
    }
    ReportWriter(config).write_json("curve_build", report)
    return report


def check_qs(config: RunConfig, samples: int = 200) -> Dict[str, Any]:
    """Quasisymmetry constants of each map and of the curve's cross ratios."""
    phis, _ = load_maps(config)
    curve = load_curve(config)
    per_map = [{"map": i + 1, **qs_constant(phi)} for i, phi in enumerate(phis)]
    curve_k = curve_qs_constant(curve, config.rng("curve_qs"), samples=samples)
    writer = ReportWriter(config)
    writer.write_csv("qs_constants", per_map)
    report = {
        "d": curve.d,
        "maps": per_map,
        "max_map_K": max(row["K"] for row in per_map),
        "curve": curve_k,
    }
    writer.write_json("curve_check_qs", report)
    logger.info(f"📊 map K ≤ {report['max_map_K']:.4f}, cross-ratio K = {curve_k['K']:.4f}")
    return report


def count_nontransverse_sweep(config: RunConfig, subspaces: int = 100, grid: int = 2000) -> Dict[str, Any]:
    """Counts for random k-planes V, k = 1..d−1, flagged when above k(d−k)."""
    curve = load_curve(config)
    d = curve.d
    rng = config.rng("nontransverse")
    rows: List[Dict[str, Any]] = []
    for k in range(1, d):
        for j in progress(range(subspaces), config.show_progress, f"k={k}"):
            v = rng.normal(size=(d, k))
            result = count_nontransverse(curve, v, samples=grid)
            rows.append({
                "k": k,
                "index": j,
                "count": result.count,
                "total": result.total,
                "at_infinity": result.at_infinity,
                "bound": k * (d - k),
                "exceeds_bound": result.total > k * (d - k),
            })
    flagged = [r for r in rows if r["exceeds_bound"]]
    if flagged:
        logger.warning(f"⚠️ {len(flagged)} subspace(s) exceed the k(d−k) count")
    writer = ReportWriter(config)
    writer.write_csv("nontransverse_counts", rows)
    summary = {
        "d": d,
        "subspaces": subspaces,
        "max_total": {str(k): max(r["total"] for r in rows if r["k"] == k) for k in range(1, d)},
        "flagged": len(flagged),
    }
    writer.write_json("curve_count_nontransverse", summary)
    return summary
