"""
Discrete checks on solved harmonic maps.

The Laplacian at an interior vertex is Σ_u w_uv (·_u − ·_v) / area_v. For a
discrete harmonic h and a point y, both (d_y∘h)² − (local energy) and d_y∘h
are discretely subharmonic; these hold up to the solver tolerance.
"""

import math
import logging
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..spd.geometry import SpdPoint
from ..spd.inequalities import quad_cr_bound_check
from .mesh import DiskMesh
from .solver import VertexMap, edge_distances, relative_distance

# Configure logging
logger = logging.getLogger(__name__)


def _factor_metric(p: SpdPoint, q: SpdPoint) -> float:
    return float(relative_distance(p.get_factor(), q.get_factor()))


def _vertex_sums(mesh: DiskMesh, per_edge: np.ndarray) -> np.ndarray:
    """Σ over edges at v of a symmetric per-edge quantity."""
    out = np.zeros(mesh.n_vertices)
    np.add.at(out, mesh.edges[:, 0], per_edge)
    np.add.at(out, mesh.edges[:, 1], per_edge)
    return out


def energy_density(mesh: DiskMesh, h: VertexMap) -> np.ndarray:
    """e(v) = ¼ Σ_u w_uv d_Y(h(u), h(v))² / area_v, so Σ_v e(v)·area_v is the energy."""
    return 0.25 * _vertex_sums(mesh, mesh.weights * edge_distances(mesh, h) ** 2) / mesh.areas


def gradient_norm(mesh: DiskMesh, h: VertexMap) -> np.ndarray:
    """Per-vertex max of d_Y(h(u), h(v)) / d_X(u, v) over incident edges."""
    ratio = edge_distances(mesh, h) / mesh.edge_lengths()
    out = np.zeros(mesh.n_vertices)
    np.maximum.at(out, mesh.edges[:, 0], ratio)
    np.maximum.at(out, mesh.edges[:, 1], ratio)
    return out


def distance_laplacians(mesh: DiskMesh, h: VertexMap, y: SpdPoint) -> Dict[str, np.ndarray]:
    """Interior values of Δ(d_y∘h)² − 4e and Δ(d_y∘h)."""
    dy = h.distances_to_point(y)
    interior = mesh.interior_ids
    lap_sq = mesh.scalar_laplacian(dy ** 2)
    lap = mesh.scalar_laplacian(dy)
    return {
        "bochner": (lap_sq - 4.0 * energy_density(mesh, h))[interior],
        "subharmonic": lap[interior],
        "distance": dy,
    }


def maximum_principle_gap(mesh: DiskMesh, h: VertexMap, y: SpdPoint) -> float:
    """max over the interior of d_y∘h minus its max over the boundary."""
    dy = h.distances_to_point(y)
    return float(dy[mesh.interior_ids].max() - dy[mesh.boundary_ids].max())


def uniqueness_gap(h1: VertexMap, h2: VertexMap) -> float:
    return float(np.max(h1.distances_to(h2)))


def refinement_order(deltas: Sequence[float], errors: Sequence[float]) -> float:
    """Observed order p in error ≈ C·Δ^p, by least squares in log-log."""
    deltas = np.asarray(deltas, dtype=float)
    errors = np.asarray(errors, dtype=float)
    if deltas.size < 2:
        return math.nan
    p, _ = np.polyfit(np.log(deltas), np.log(np.maximum(errors, 1e-300)), 1)
    return float(p)


def interior_quadrilateral(f_x: SpdPoint, f_z: SpdPoint, h_x: SpdPoint, h_z: SpdPoint) -> List[SpdPoint]:
    """Corners (f(x), h(x), h(z), f(z)).

    Sides: D = d(f(x), h(x)), E′ = d(h(x), h(z)), D′ = d(h(z), f(z)), E = d(f(z), f(x)).
    Diagonals: F = d(h(x), f(z)), F′ = d(f(x), h(z)).
    """
    return [f_x, h_x, h_z, f_z]


def quadrilateral_diagnostics(mesh: DiskMesh, f: VertexMap, h: VertexMap, rng: np.random.Generator,
                              pairs: int = 200, slack: float = 1e-9) -> Dict[str, Any]:
    """F − D + F′ − D′ ≤ 2EE′/D on sampled vertex pairs, D = d(f(x), h(x)) the displacement at x."""
    worst = -math.inf
    violations = 0
    used = 0
    for _ in range(pairs):
        x, z = rng.choice(mesh.n_vertices, size=2, replace=False)
        quad = interior_quadrilateral(f[x], f[z], h[x], h[z])
        # points where h meets f carry no bound
        if _factor_metric(quad[0], quad[1]) <= 1e-12:
            continue
        lhs, rhs = quad_cr_bound_check(quad, _factor_metric)
        used += 1
        worst = max(worst, lhs - rhs)
        if lhs > rhs + slack:
            violations += 1
    return {"pairs": used, "violations": violations, "max_excess": worst if used else None}


def diagnostics(h: VertexMap, mesh: DiskMesh, f: VertexMap, y: SpdPoint, rng: np.random.Generator,
                far_y: Optional[SpdPoint] = None, pairs: int = 200) -> Dict[str, Any]:
    """Report (a)-(e) for a solved map.

    (a) Δ(d_y∘h)² − 4e ≥ −tol, (b) Δ(d_y∘h) ≥ −tol, (c) sup|∇h| and sup|∇h|/√D
    with D = d_y'(h(centre)) for a far point y', (d) quadrilateral bound on
    (f, h) samples, (e) maximum principle gap.
    """
    laps = distance_laplacians(mesh, h, y)
    grad = gradient_norm(mesh, h)
    report: Dict[str, Any] = {
        "bochner_min": float(laps["bochner"].min()),
        "subharmonic_min": float(laps["subharmonic"].min()),
        "gradient_sup": float(grad.max()),
        "quadrilateral": quadrilateral_diagnostics(mesh, f, h, rng, pairs),
        "maximum_principle_gap": maximum_principle_gap(mesh, h, y),
    }
    if far_y is not None:
        big_d = float(h.distances_to_point(far_y)[0])
        report["harnack_D"] = big_d
        report["harnack_ratio"] = float(grad.max() / math.sqrt(big_d)) if big_d > 0 else math.inf
    logger.info(f"📊 Diagnostics: Δd² − 4e ≥ {report['bochner_min']:.2e}, Δd ≥ {report['subharmonic_min']:.2e}, "
                f"max-principle gap {report['maximum_principle_gap']:.2e}")
    return report
