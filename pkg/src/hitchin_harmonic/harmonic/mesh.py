"""
Geodesic-polar triangulations of hyperbolic disks with cotangent weights.

Ring j sits at hyperbolic radius jΔ and carries max(3, ⌈2π sinh(jΔ)/Δ⌉)
vertices at angles 2πk/n_j, so the vertex set of B(x, R) is a prefix of
the vertex set of B(x, R') for R < R' at the same Δ.
"""

import math
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
import pandas as pd
import scipy.sparse as sp

from ..shared.errors import DomainError
from ..hyp2.plane import HypPoint, I_POINT, hyp_distance_array, point_at

# Configure logging
logger = logging.getLogger(__name__)

WEIGHT_FLOOR = 1e-6


def ring_size(j: int, delta: float) -> int:
    if j == 0:
        return 1
    return max(3, int(math.ceil(2.0 * math.pi * math.sinh(j * delta) / delta - 1e-9)))


def _zipper(inner: np.ndarray, outer: np.ndarray) -> List[tuple]:
    """Triangles between two concentric rings of vertex ids, both starting at angle 0."""
    na, nb = inner.size, outer.size
    if na == 1:
        return [(inner[0], outer[k], outer[(k + 1) % nb]) for k in range(nb)]
    tris = []
    i = k = 0
    while i < na or k < nb:
        advance_inner = k == nb or (i < na and (i + 1) / na <= (k + 1) / nb)
        if advance_inner:
            tris.append((inner[i % na], inner[(i + 1) % na], outer[k % nb]))
            i += 1
        else:
            tris.append((inner[i % na], outer[k], outer[(k + 1) % nb]))
            k += 1
    return tris


@dataclass
class DiskMesh:
    center: HypPoint
    radius: float
    delta: float
    z: np.ndarray
    ring: np.ndarray
    edges: np.ndarray
    weights: np.ndarray
    triangles: np.ndarray
    areas: np.ndarray
    clamped: int = 0
    _cache: Dict[str, object] = field(default_factory=dict, repr=False)

    @property
    def n_vertices(self) -> int:
        return self.z.size

    @property
    def rings(self) -> int:
        return int(self.ring.max())

    @property
    def boundary(self) -> np.ndarray:
        return self.ring == self.rings

    @property
    def interior_ids(self) -> np.ndarray:
        return np.flatnonzero(~self.boundary)

    @property
    def boundary_ids(self) -> np.ndarray:
        return np.flatnonzero(self.boundary)

    def within(self, r: float) -> np.ndarray:
        """Mask of vertices at distance ≤ r from the centre."""
        return self.ring * self.delta <= r + 1e-9

    def adjacency(self) -> sp.csr_matrix:
        if 'adjacency' not in self._cache:
            n = self.n_vertices
            i, j = self.edges[:, 0], self.edges[:, 1]
            w = sp.coo_matrix((np.concatenate([self.weights, self.weights]),
                               (np.concatenate([i, j]), np.concatenate([j, i]))), shape=(n, n))
            self._cache['adjacency'] = w.tocsr()
        return self._cache['adjacency']

    def laplacian(self) -> sp.csr_matrix:
        """Graph Laplacian D − W (positive semidefinite)."""
        w = self.adjacency()
        return (sp.diags(np.asarray(w.sum(axis=1)).ravel()) - w).tocsr()

    def scalar_laplacian(self, u: np.ndarray) -> np.ndarray:
        """Σ_j w_ij (u_j − u_i) / area_i at every vertex."""
        return -(self.laplacian() @ u) / self.areas

    def colouring(self) -> List[np.ndarray]:
        """Greedy colour classes of interior vertices; no class contains an interior edge."""
        if 'colouring' not in self._cache:
            adj = self.adjacency()
            interior = ~self.boundary
            colour = np.full(self.n_vertices, -1)
            for v in self.interior_ids:
                nbrs = adj.indices[adj.indptr[v]:adj.indptr[v + 1]]
                taken = {colour[u] for u in nbrs if interior[u] and colour[u] >= 0}
                c = 0
                while c in taken:
                    c += 1
                colour[v] = c
            classes = [np.flatnonzero(colour == c) for c in range(colour.max() + 1)]
            self._cache['colouring'] = classes
            logger.debug(f"Mesh colouring uses {len(classes)} classes")
        return self._cache['colouring']

    def edge_lengths(self) -> np.ndarray:
        return hyp_distance_array(self.z[self.edges[:, 0]], self.z[self.edges[:, 1]])

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "vertex": np.arange(self.n_vertices),
            "x": self.z.real,
            "y": self.z.imag,
            "ring": self.ring,
            "boundary": self.boundary,
            "area": self.areas,
        })

    def edge_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"i": self.edges[:, 0], "j": self.edges[:, 1], "weight": self.weights})


def _cotangent_weights(z: np.ndarray, tris: np.ndarray, edges: np.ndarray, n: int):
    keys = edges[:, 0] * n + edges[:, 1]
    order = np.argsort(keys)
    sorted_keys = keys[order]

    def edge_index(a, b):
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        return order[np.searchsorted(sorted_keys, lo * n + hi)]

    a, b, c = tris[:, 0], tris[:, 1], tris[:, 2]
    l_ab = hyp_distance_array(z[a], z[b])
    l_bc = hyp_distance_array(z[b], z[c])
    l_ca = hyp_distance_array(z[c], z[a])
    s = 0.5 * (l_ab + l_bc + l_ca)
    area = np.sqrt(np.clip(s * (s - l_ab) * (s - l_bc) * (s - l_ca), 1e-300, None))

    weights = np.zeros(edges.shape[0])
    # half cotangent of the angle opposite each side
    for (p, q), opp_sq, s1, s2 in (((a, b), l_ab ** 2, l_bc ** 2, l_ca ** 2),
                                   ((b, c), l_bc ** 2, l_ca ** 2, l_ab ** 2),
                                   ((c, a), l_ca ** 2, l_ab ** 2, l_bc ** 2)):
        np.add.at(weights, edge_index(p, q), (s1 + s2 - opp_sq) / (8.0 * area))

    vertex_area = np.zeros(n)
    for v in (a, b, c):
        np.add.at(vertex_area, v, area / 3.0)
    return weights, vertex_area


def build_mesh(radius: float, delta: float, center: HypPoint = I_POINT,
               weight_floor: float = WEIGHT_FLOOR) -> DiskMesh:
    """Triangulated geodesic-polar mesh of B(center, radius) with spacing delta."""
    if not 0 < delta <= radius:
        raise DomainError(f"mesh needs 0 < delta ≤ radius, got delta={delta}, radius={radius}")
    rings = max(1, int(round(radius / delta)))
    if abs(rings * delta - radius) > 1e-9 * radius:
        logger.debug(f"radius {radius} is not a multiple of {delta}; using {rings * delta}")

    zs, ring_ids, offsets = [], [], [0]
    for j in range(rings + 1):
        n_j = ring_size(j, delta)
        if j == 0:
            zs.append(np.array([center.z]))
        else:
            zs.append(np.atleast_1d(point_at(center, j * delta, 2.0 * np.pi * np.arange(n_j) / n_j)))
        ring_ids.append(np.full(n_j, j))
        offsets.append(offsets[-1] + n_j)
    z = np.concatenate(zs)
    ring = np.concatenate(ring_ids)
    n = z.size

    tris = []
    for j in range(rings):
        inner = np.arange(offsets[j], offsets[j + 1])
        outer = np.arange(offsets[j + 1], offsets[j + 2])
        tris.extend(_zipper(inner, outer))
    tris = np.array(tris, dtype=int)

    pairs = np.concatenate([tris[:, [0, 1]], tris[:, [1, 2]], tris[:, [2, 0]]])
    pairs = np.sort(pairs, axis=1)
    edges = np.unique(pairs, axis=0)

    weights, areas = _cotangent_weights(z, tris, edges, n)
    bad = weights <= 0
    clamped = int(bad.sum())
    if clamped:
        logger.warning(f"⚠️ Clamped {clamped} non-positive cotangent weight(s) to {weight_floor}")
        weights = np.where(bad, weight_floor, weights)

    mesh = DiskMesh(center=center, radius=rings * delta, delta=delta, z=z, ring=ring, edges=edges,
                    weights=weights, triangles=tris, areas=areas, clamped=clamped)
    logger.info(f"📊 Mesh R={mesh.radius:g} Δ={delta:g}: {n} vertices, {edges.shape[0]} edges, "
                f"{tris.shape[0]} triangles")
    return mesh
