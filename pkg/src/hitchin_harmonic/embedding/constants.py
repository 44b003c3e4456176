"""
Sampled quasi-isometry constants and Morse-lemma diagnostics of an embedding.

All constants here are estimates over seeded samples, reported with the
sample counts they were taken over.
"""

import math
import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ..shared.config import DEFAULT_RADII
from ..shared.errors import DomainError
from ..hyp2.plane import HypPoint, I_POINT, disk_samples, hyp_distance_array, point_at
from ..spd.geometry import CartanVector, SpdPoint
from ..spd.weyl import weyl_cone_distance
from ..shared.export import matrix_row_major
from .embedding import Embedding, log_singular_values

# Configure logging
logger = logging.getLogger(__name__)

PAIR_DISTANCE_RANGE = (0.1, 20.0)


def sample_pairs(rng: np.random.Generator, count: int, center: HypPoint = I_POINT, spread: float = 3.0,
                 distance_range: Tuple[float, float] = PAIR_DISTANCE_RANGE) -> Tuple[np.ndarray, np.ndarray]:
    """Pairs (x, z): x uniform-ish in B(center, spread), z at a uniform distance from x."""
    lo, hi = distance_range
    if not 0 < lo <= hi:
        raise DomainError(f"invalid pair distance range {distance_range}")
    xs = np.empty(count, dtype=complex)
    zs = np.empty(count, dtype=complex)
    for k in range(count):
        r0 = spread * math.sqrt(rng.uniform())
        xs[k] = point_at(center, max(r0, 1e-9), rng.uniform(0.0, 2.0 * np.pi))
        rho = rng.uniform(lo, hi)
        zs[k] = point_at(HypPoint.from_complex(xs[k]), rho, rng.uniform(0.0, 2.0 * np.pi))
    return xs, zs


def _pair_records(e: Embedding, xs: np.ndarray, zs: np.ndarray) -> List[Dict[str, Any]]:
    d_x = hyp_distance_array(xs, zs)
    records = []
    for x, z, dx in zip(xs, zs, d_x):
        v = e.vector_distance(x, z)
        records.append({"x": x, "z": z, "d_X": float(dx), "d_Y": v.norm, "roots": v.roots()})
    return records


def estimate_constants(e: Embedding, rng: np.random.Generator, samples: int = 2000,
                       center: HypPoint = I_POINT, spread: float = 3.0,
                       distance_range: Tuple[float, float] = PAIR_DISTANCE_RANGE) -> Dict[str, Any]:
    """Sampled (L̂, M̂).

    L̂ = sup d_Y/(d_X + 1); M̂ = sup over pairs and roots of (d_X − 1)/α_i, clamped at 0.
    A non-positive root on a pair with d_X > 1 makes M̂ infinite.
    """
    xs, zs = sample_pairs(rng, samples, center, spread, distance_range)
    records = _pair_records(e, xs, zs)

    l_hat, l_arg = 0.0, None
    m_hat, m_arg = 0.0, None
    for k, rec in enumerate(records):
        ratio = rec["d_Y"] / (rec["d_X"] + 1.0)
        if ratio > l_hat:
            l_hat, l_arg = ratio, k
        num = rec["d_X"] - 1.0
        if num <= 0:
            continue
        alpha = float(np.min(rec["roots"]))
        m = math.inf if alpha <= 1e-12 else num / alpha
        if m > m_hat:
            m_hat, m_arg = m, k

    logger.info(f"📊 Sampled constants over {samples} pairs: L̂={l_hat:.4f}, M̂={m_hat:.4f}")
    return {
        "L": l_hat,
        "M": m_hat,
        "samples": samples,
        "distance_range": list(distance_range),
        "argmax_L": _describe(records[l_arg]) if l_arg is not None else None,
        "argmax_M": _describe(records[m_arg]) if m_arg is not None else None,
        "records": records,
    }


def _describe(rec: Dict[str, Any]) -> Dict[str, Any]:
    return {
        "x": [rec["x"].real, rec["x"].imag],
        "z": [rec["z"].real, rec["z"].imag],
        "d_X": rec["d_X"],
        "d_Y": rec["d_Y"],
        "roots": [float(a) for a in rec["roots"]],
    }


def pair_table(records: Sequence[Dict[str, Any]]) -> pd.DataFrame:
    rows = []
    for rec in records:
        row = {"x_re": rec["x"].real, "x_im": rec["x"].imag, "z_re": rec["z"].real, "z_im": rec["z"].imag,
               "d_X": rec["d_X"], "d_Y": rec["d_Y"]}
        for i, a in enumerate(rec["roots"], start=1):
            row[f"alpha_{i}"] = float(a)
        rows.append(row)
    return pd.DataFrame(rows)


def coarse_lipschitz_certificate(e: Embedding, lipschitz: float, rng: np.random.Generator, samples: int = 500,
                                 slack: float = 1.05, center: HypPoint = I_POINT, spread: float = 3.0) -> Dict[str, Any]:
    """Check d_Y ≤ slack·L̂·(d_X + 1) on a fresh sample."""
    xs, zs = sample_pairs(rng, samples, center, spread)
    worst = 0.0
    violations = 0
    for rec in _pair_records(e, xs, zs):
        ratio = rec["d_Y"] / (rec["d_X"] + 1.0)
        worst = max(worst, ratio)
        if ratio > slack * lipschitz:
            violations += 1
    passed = violations == 0
    if not passed:
        logger.warning(f"⚠️ coarse Lipschitz check failed on {violations}/{samples} fresh pairs")
    return {"passed": passed, "L": lipschitz, "slack": slack, "worst_ratio": worst,
            "violations": violations, "samples": samples}


def _geodesic_point(a: float, b: float, s: np.ndarray) -> np.ndarray:
    """Arclength-parametrised geodesic from a (s → −∞) to b (s → +∞)."""
    s = np.asarray(s, dtype=float)
    if math.isinf(b):
        return a + 1j * np.exp(s)
    if math.isinf(a):
        return b + 1j * np.exp(-s)
    c, rho = 0.5 * (a + b), 0.5 * (b - a)
    return c + rho * np.tanh(s) + 1j * rho / np.cosh(s)


def morse_defect(e: Embedding, a: float, b: float, samples: int = 32, extent: Optional[float] = None,
                 tol: float = 1e-6, starts: int = 8, rng: Optional[np.random.Generator] = None) -> Dict[str, Any]:
    """Max distance of f along the geodesic (a, b) from the Weyl cone at f(near a) through f(near b).

    The geodesic is sampled at signed distances in [−extent, extent] from its
    midpoint; extent defaults to the largest exhaustion radius.
    """
    if a == b:
        raise DomainError("geodesic endpoints must differ")
    if not math.isinf(a) and not math.isinf(b) and a > b:
        a, b = b, a
    extent = float(extent) if extent is not None else max(DEFAULT_RADII)
    if extent <= 0:
        raise DomainError("extent must be positive")
    rng = rng if rng is not None else np.random.default_rng(0)
    z = _geodesic_point(a, b, np.linspace(-extent, extent, samples))
    a_fac = e.factors(z)
    points = [SpdPoint.from_matrix(m @ m.T, m) for m in a_fac]
    base, through = points[0], points[-1]
    distances = np.array([weyl_cone_distance(p, base, through, tol, starts, rng) for p in points[1:-1]])
    defect = float(distances.max()) if distances.size else 0.0
    logger.info(f"📊 Morse defect along ({a}, {b}): {defect:.3e} over {distances.size} points")
    return {"defect": defect, "endpoints": [a, b], "extent": extent, "samples": int(distances.size),
            "distances": distances}


def section_sup_distance(e1: Embedding, e2: Embedding, radius: float, center: HypPoint = I_POINT,
                         rings: int = 12) -> Dict[str, Any]:
    """Sampled sup over B(center, radius) of d_Y(e1(z), e2(z))."""
    if e1.d != e2.d:
        raise DomainError("embeddings have different target dimension")
    z, _ = disk_samples(center, radius, rings)
    b = np.linalg.solve(e1.factors(z), e2.factors(z))
    dist = np.array([CartanVector(log_singular_values(m)).norm for m in b])
    k = int(np.argmax(dist))
    return {"sup": float(dist[k]), "at": [z[k].real, z[k].imag], "radius": radius, "samples": int(z.size)}


def section_growth(e1: Embedding, e2: Embedding, radii: Sequence[float] = (4.0, 6.0),
                   center: HypPoint = I_POINT) -> Dict[str, Any]:
    """Sup distance per radius and the relative growth between the last two."""
    sups = [section_sup_distance(e1, e2, r, center)["sup"] for r in radii]
    growth = 0.0
    if len(sups) > 1 and sups[-2] > 1e-12:
        growth = sups[-1] / sups[-2] - 1.0
    return {"radii": list(radii), "sup": sups, "growth": growth}


def embedding_dump(e: Embedding, vertex_ids: Sequence[int], z: np.ndarray) -> pd.DataFrame:
    """Rows (vertex id, x, y, row-major matrix entries)."""
    cached = e.evaluate_vertices(list(vertex_ids), np.asarray(z))
    rows = []
    for vid, zk in zip(vertex_ids, np.asarray(z)):
        row = {"vertex": int(vid), "x": zk.real, "y": zk.imag}
        for j, val in enumerate(matrix_row_major(cached[vid].m)):
            row[f"m{j // e.d}{j % e.d}"] = val
        rows.append(row)
    return pd.DataFrame(rows)
