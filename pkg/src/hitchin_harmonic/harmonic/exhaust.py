"""
Exhaustion driver: harmonic maps on growing balls with mollified boundary data.
"""

import time
import logging
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..shared.config import Tolerances
from ..shared.errors import DomainError
from ..shared.logging_utils import progress
from ..hyp2.green import boundary_estimate_bound
from ..hyp2.plane import HypPoint, I_POINT
from .mesh import build_mesh
from .mollify import edge_lipschitz, mollify
from .solver import DirichletSolver, SolveResult, VertexMap

# Configure logging
logger = logging.getLogger(__name__)

COMPARISON_RADIUS = 2.0
INTERIOR_MARGIN = 2.0
BOUNDARY_SCALE = 2.0


def exhaust(e, radii: Sequence[float], delta: float, center: HypPoint = I_POINT, mollify_rings: int = 3,
            tolerances: Optional[Tolerances] = None, init: str = "mollified",
            show_progress: bool = False) -> Dict[str, Any]:
    """Solve on B(center, R) for each R and track distances to f and between radii.

    For each R the boundary data are f^{(1)}; records sup d_Y(h_R, f) over the
    radius-(R−2) subdisk and sup d_Y(h_R, h_prev) over the radius-2 subdisk,
    where meshes at one Δ share their inner vertices.
    """
    radii = [float(r) for r in radii]
    if not radii or any(b <= a for a, b in zip(radii, radii[1:])):
        raise DomainError(f"radii must be non-empty and increasing, got {radii}")
    tol = tolerances or Tolerances()

    rows: List[Dict[str, Any]] = []
    solutions: List[SolveResult] = []
    previous: Optional[VertexMap] = None
    for radius in progress(radii, show_progress, desc="exhaust", total=len(radii)):
        started = time.time()
        logger.info(f"🚀 Solving on B(R={radius:g}) with Δ={delta:g}")
        mesh = build_mesh(radius, delta, center)
        f = VertexMap.from_embedding(e, mesh)
        f1, mollify_stats = mollify(e, mesh, rings=mollify_rings, tolerances=tol)
        start = f1 if init == "mollified" else None
        result = DirichletSolver(mesh, tol).solve(f1, start)
        h = result.h

        dist_f = h.distances_to(f)
        inner = mesh.within(max(radius - INTERIOR_MARGIN, 0.0))
        row: Dict[str, Any] = {
            "radius": mesh.radius,
            "vertices": mesh.n_vertices,
            "clamped_weights": mesh.clamped,
            "sup_interior_distance_to_f": float(dist_f[inner].max()),
            "sup_distance_to_f": float(dist_f.max()),
            "mollify": mollify_stats,
            "solve": result.to_dict(),
        }
        lipschitz = edge_lipschitz(mesh, f1)
        row["boundary_lipschitz"] = lipschitz
        row["boundary_bound"] = boundary_estimate_bound(BOUNDARY_SCALE, lipschitz)

        if previous is not None:
            common = np.flatnonzero(mesh.within(COMPARISON_RADIUS))
            common = common[common < previous.n]
            row["sup_distance_to_previous"] = float(np.max(h.take(common).distances_to(previous.take(common))))
        row["execution_time"] = time.time() - started
        rows.append(row)
        solutions.append(result)
        previous = h

    growth = None
    if len(rows) > 1 and rows[-2]["sup_interior_distance_to_f"] > 1e-12:
        growth = rows[-1]["sup_interior_distance_to_f"] / rows[-2]["sup_interior_distance_to_f"] - 1.0
    logger.info(f"✅ Exhaustion finished over radii {radii}")
    return {
        "delta": delta,
        "radii": radii,
        "rows": rows,
        "interior_growth": growth,
        "solutions": solutions,
    }
