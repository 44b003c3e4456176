"""
Mollification: replace f by its barycentre over unit balls.
"""

import logging
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ..shared.config import Tolerances
from ..hyp2.plane import I_POINT, disk_samples
from ..spd.geometry import KAPPA, karcher_mean_array, spd_sqrt
from .mesh import DiskMesh
from .solver import VertexMap, edge_distances, normalize_factors

# Configure logging
logger = logging.getLogger(__name__)

CHUNK = 2048


def _relative_log_norm(m: np.ndarray) -> np.ndarray:
    w = np.linalg.eigvalsh(m)
    v = np.log(w)
    v = v - v.mean(axis=-1, keepdims=True)
    return KAPPA * np.linalg.norm(v, axis=-1)


def mollify_points(e, z: np.ndarray, radius: float = 1.0, rings: int = 3,
                   tolerances: Optional[Tolerances] = None) -> Tuple[np.ndarray, Dict[str, Any]]:
    """Factors of f^{(1)}(z) = barycentre of f over B(z, radius), with spread statistics.

    Sample templates around i are carried to each z by its affine frame.
    """
    tol = tolerances or Tolerances()
    template, weights = disk_samples(I_POINT, radius, rings)
    z = np.asarray(z, dtype=complex)
    d = e.d
    out = np.empty((z.size, d, d))
    moved = np.empty(z.size)
    spread = np.empty(z.size)
    for lo in range(0, z.size, CHUNK):
        zc = z[lo:lo + CHUNK]
        samples = zc.real[:, None] + zc.imag[:, None] * template[None, :]
        b = e.relative(np.broadcast_to(zc[:, None], samples.shape), samples)
        r = b @ np.swapaxes(b, -1, -2)
        init = np.broadcast_to(np.eye(d), (zc.size, d, d))
        hrel, _, _ = karcher_mean_array(r, np.broadcast_to(weights, samples.shape), init=init,
                                        tol=tol.karcher_tol, max_iter=tol.karcher_max_iter)
        root, _ = spd_sqrt(hrel)
        out[lo:lo + CHUNK] = normalize_factors(e.factors(zc) @ root)
        moved[lo:lo + CHUNK] = _relative_log_norm(hrel)
        spread[lo:lo + CHUNK] = _relative_log_norm(r).max(axis=-1)
    stats = {
        "samples_per_point": int(template.size),
        "radius": radius,
        "sup_distance_to_f": float(moved.max()) if moved.size else 0.0,
        "sup_sample_spread": float(spread.max()) if spread.size else 0.0,
    }
    return out, stats


def mollify(e, mesh: DiskMesh, radius: float = 1.0, rings: int = 3,
            tolerances: Optional[Tolerances] = None) -> Tuple[VertexMap, Dict[str, Any]]:
    """f^{(1)} on the mesh vertices, and d_Y(f, f^{(1)}) against the sample spread."""
    factors, stats = mollify_points(e, mesh.z, radius, rings, tolerances)
    if stats["sup_distance_to_f"] > stats["sup_sample_spread"] + 1e-9:
        logger.warning("⚠️ mollified values moved further than the sample spread")
    logger.info(f"📊 Mollified {mesh.n_vertices} vertices: sup d(f, f¹) = {stats['sup_distance_to_f']:.4f}, "
                f"sample spread {stats['sup_sample_spread']:.4f}")
    return VertexMap(factors), stats


def edge_lipschitz(mesh: DiskMesh, h: VertexMap) -> float:
    """max over edges of d_Y(h(u), h(v)) / d_X(u, v)."""
    return float(np.max(edge_distances(mesh, h) / mesh.edge_lengths()))
