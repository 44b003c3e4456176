#!/usr/bin/env python3
"""
Harmonic commands: single Dirichlet solve, exhaustion, diagnostics.
"""

import logging
from typing import Any, Dict, List, Tuple

from ..shared.config import RunConfig
from ..shared.export import ReportWriter
from ..hyp2.plane import HypPoint, I_POINT, point_at
from ..harmonic.mesh import DiskMesh, build_mesh
from ..harmonic.mollify import mollify
from ..harmonic.solver import DirichletSolver, SolveResult, VertexMap
from ..harmonic.diagnostics import diagnostics as solution_diagnostics, uniqueness_gap
from ..harmonic.exhaust import exhaust as exhaust_radii
from .inputs import load_embedding

# Configure logging
logger = logging.getLogger(__name__)

# y for the distance diagnostics sits just outside the disk; the Harnack probe far away
NEAR_TARGET_OFFSET = 1.0
FAR_TARGET_SCALE = 3.0


def _solve_largest(config: RunConfig, e) -> Tuple[DiskMesh, VertexMap, VertexMap, SolveResult]:
    radius = config.radii[-1]
    mesh = build_mesh(radius, config.delta, I_POINT, config.tolerances.weight_floor)
    logger.info(f"🚀 Dirichlet problem on B(R={radius:g}), Δ={config.delta:g}: {mesh.n_vertices} vertices")
    f = VertexMap.from_embedding(e, mesh)
    f1, _ = mollify(e, mesh, rings=config.mollify_rings, tolerances=config.tolerances)
    result = DirichletSolver(mesh, config.tolerances).solve(f1, f1)
    return mesh, f, f1, result


def solve(config: RunConfig, check_uniqueness: bool = True) -> Dict[str, Any]:
    """Solve on the largest configured radius; optionally re-solve from a constant start."""
    e = load_embedding(config)
    mesh, f, f1, result = _solve_largest(config, e)
    report: Dict[str, Any] = {
        "embedding": e.describe(),
        "radius": mesh.radius,
        "delta": mesh.delta,
        "vertices": mesh.n_vertices,
        "clamped_weights": mesh.clamped,
        "solve": result.to_dict(),
        "sup_distance_to_f": float(result.h.distances_to(f).max()),
    }
    if check_uniqueness:
        solver = DirichletSolver(mesh, config.tolerances)
        other = solver.solve(f1, solver.boundary_constant_init(f1))
        report["uniqueness_gap"] = uniqueness_gap(result.h, other.h)

    writer = ReportWriter(config)
    writer.write_csv("harmonic_solution", result.h.to_frame())
    writer.write_csv("harmonic_energy", [{"iteration": k, "energy": en, "move": mv}
                                        for k, (en, mv) in enumerate(zip(result.energies, result.moves))])
    writer.write_csv("mesh_edges", mesh.edge_frame())
    writer.write_json("harmonic_solve", report)
    return report


def exhaust(config: RunConfig) -> Dict[str, Any]:
    """Exhaustion over config.radii at the configured Δ."""
    e = load_embedding(config)
    result = exhaust_radii(e, config.radii, config.delta, I_POINT, config.mollify_rings, config.tolerances,
                           show_progress=config.show_progress)
    result.pop("solutions")
    table: List[Dict[str, Any]] = []
    for row in result["rows"]:
        flat = {k: v for k, v in row.items() if not isinstance(v, dict) and k != "execution_time"}
        flat.update({f"solve_{k}": v for k, v in row["solve"].items()})
        table.append(flat)
    writer = ReportWriter(config)
    writer.write_csv("exhaust", table)
    report = {"embedding": e.describe(), **result}
    writer.write_json("harmonic_exhaust", report)
    return report


def diagnostics(config: RunConfig, pairs: int = 200) -> Dict[str, Any]:
    """Solve, then report the discrete Bochner, subharmonicity, Harnack, quadrilateral and max-principle checks."""
    e = load_embedding(config)
    mesh, f, _, result = _solve_largest(config, e)
    near = HypPoint.from_complex(complex(point_at(I_POINT, mesh.radius + NEAR_TARGET_OFFSET, 0.3)))
    far = HypPoint.from_complex(complex(point_at(I_POINT, FAR_TARGET_SCALE * mesh.radius, 1.1)))
    report = solution_diagnostics(result.h, mesh, f, e.evaluate(near), config.rng("harmonic_diagnostics"),
                                  far_y=e.evaluate(far), pairs=pairs)
    report.update({"radius": mesh.radius, "delta": mesh.delta, "solve": result.to_dict()})
    ReportWriter(config).write_json("harmonic_diagnostics", report)
    return report
