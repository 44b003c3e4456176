"""
Discrete harmonic maps from disk meshes into Y_d.

Values are stored as factors A_v with h(v) = A_v A_vᵀ. All geometry between
neighbours goes through the relative factor A_v⁻¹A_u, which keeps far-out
vertices accurate when h(v) itself is badly conditioned.

One iteration is a Laplacian-preconditioned global step (kept only when it
lowers the energy) followed by a multicolour Gauss-Seidel sweep, where each
interior value is replaced by the weighted barycentre of its neighbours.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
import pandas as pd
import scipy.sparse.linalg as spla

from ..shared.config import Tolerances
from ..shared.errors import ConvergenceError, DomainError
from ..shared.export import matrix_row_major
from ..spd.geometry import KAPPA, SpdPoint, karcher_mean_array, spd_log, spd_sqrt, sym, sym_exp, trace_free
from .mesh import DiskMesh

# Configure logging
logger = logging.getLogger(__name__)

BACKTRACK_STEPS = (1.0, 0.5, 0.25, 0.125)


def normalize_factors(a: np.ndarray) -> np.ndarray:
    _, logdet = np.linalg.slogdet(a)
    return a * np.exp(-logdet / a.shape[-1])[..., None, None]


def relative_distance(a_from: np.ndarray, a_to: np.ndarray) -> np.ndarray:
    """d_Y(A₁A₁ᵀ, A₂A₂ᵀ) from factors, batched."""
    s = np.linalg.svd(np.linalg.solve(a_from, a_to), compute_uv=False)
    v = 2.0 * np.log(s)
    v = v - v.mean(axis=-1, keepdims=True)
    return KAPPA * np.linalg.norm(v, axis=-1)


def _polar_rotation(a: np.ndarray) -> np.ndarray:
    u, _, vt = np.linalg.svd(a)
    return u @ vt


@dataclass
class VertexMap:
    """Vertex id → point of Y_d, stored as factors."""

    factors: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.factors, dtype=float)
        if a.ndim != 3 or a.shape[1] != a.shape[2]:
            raise DomainError(f"vertex map factors must have shape (n, d, d), got {a.shape}")
        self.factors = normalize_factors(a)

    @property
    def n(self) -> int:
        return self.factors.shape[0]

    @property
    def d(self) -> int:
        return self.factors.shape[1]

    def matrices(self) -> np.ndarray:
        return self.factors @ np.swapaxes(self.factors, -1, -2)

    def __getitem__(self, v: int) -> SpdPoint:
        a = self.factors[v]
        return SpdPoint.from_matrix(a @ a.T, a)

    def take(self, ids) -> 'VertexMap':
        return VertexMap(self.factors[np.asarray(ids)])

    def copy(self) -> 'VertexMap':
        return VertexMap(self.factors.copy())

    @classmethod
    def constant(cls, p: SpdPoint, n: int) -> 'VertexMap':
        return cls(np.broadcast_to(p.get_factor(), (n, p.d, p.d)).copy())

    @classmethod
    def from_points(cls, points: List[SpdPoint]) -> 'VertexMap':
        return cls(np.stack([p.get_factor() for p in points]))

    @classmethod
    def from_embedding(cls, e, mesh: DiskMesh) -> 'VertexMap':
        return cls(e.factors(mesh.z))

    def distances_to(self, other: 'VertexMap') -> np.ndarray:
        return relative_distance(self.factors, other.factors)

    def distances_to_point(self, y: SpdPoint) -> np.ndarray:
        return relative_distance(np.broadcast_to(y.get_factor(), self.factors.shape), self.factors)

    def to_frame(self) -> pd.DataFrame:
        d = self.d
        rows = []
        for v, a in enumerate(self.factors):
            row = {"vertex": v}
            for j, val in enumerate(matrix_row_major(a @ a.T)):
                row[f"m{j // d}{j % d}"] = val
            rows.append(row)
        return pd.DataFrame(rows)


def _edge_distances(mesh: DiskMesh, a: np.ndarray) -> np.ndarray:
    return relative_distance(a[mesh.edges[:, 0]], a[mesh.edges[:, 1]])


def _factor_energy(mesh: DiskMesh, a: np.ndarray) -> float:
    return float(0.5 * np.sum(mesh.weights * _edge_distances(mesh, a) ** 2))


def edge_distances(mesh: DiskMesh, h: VertexMap) -> np.ndarray:
    return _edge_distances(mesh, h.factors)


def dirichlet_energy(mesh: DiskMesh, h: VertexMap) -> float:
    """½ Σ_edges w_uv d_Y(h(u), h(v))²."""
    return _factor_energy(mesh, h.factors)


@dataclass
class SolveResult:
    h: VertexMap
    converged: bool
    iterations: int
    energies: List[float] = field(default_factory=list)
    moves: List[float] = field(default_factory=list)
    global_steps: int = 0

    def to_dict(self) -> Dict[str, object]:
        return {
            "converged": self.converged,
            "iterations": self.iterations,
            "final_energy": self.energies[-1] if self.energies else None,
            "final_move": self.moves[-1] if self.moves else None,
            "global_steps": self.global_steps,
        }


class DirichletSolver:
    """Hybrid global-step / multicolour Gauss-Seidel solver on a fixed mesh."""

    def __init__(self, mesh: DiskMesh, tolerances: Optional[Tolerances] = None):
        self.mesh = mesh
        self.tol = tolerances or Tolerances()
        self.interior = mesh.interior_ids
        self.boundary = mesh.boundary_ids
        if self.interior.size == 0:
            raise DomainError("mesh has no interior vertices")

        adj = mesh.adjacency()
        degree = np.diff(adj.indptr)
        kmax = int(degree[self.interior].max())
        n_i = self.interior.size
        # neighbour tables, padded with the vertex itself at zero weight
        self._nbr = np.repeat(self.interior[:, None], kmax, axis=1)
        self._w = np.zeros((n_i, kmax))
        for row, v in enumerate(self.interior):
            lo, hi = adj.indptr[v], adj.indptr[v + 1]
            self._nbr[row, :hi - lo] = adj.indices[lo:hi]
            self._w[row, :hi - lo] = adj.data[lo:hi]

        position = np.full(mesh.n_vertices, -1)
        position[self.interior] = np.arange(n_i)
        self._classes = [position[c] for c in mesh.colouring()]

        lap = mesh.laplacian()
        self._lu = spla.splu(lap[self.interior][:, self.interior].tocsc())

    # -- pieces ------------------------------------------------------------

    def _relative_points(self, a: np.ndarray, rows: np.ndarray) -> np.ndarray:
        """R_u = B Bᵀ with B = A_v⁻¹ A_u for the neighbours of the given interior rows."""
        av = a[self.interior[rows]]
        b = np.linalg.solve(av[:, None, :, :], a[self._nbr[rows]])
        return b @ np.swapaxes(b, -1, -2)

    def _sweep(self, a: np.ndarray) -> np.ndarray:
        d = a.shape[-1]
        for rows in self._classes:
            r = self._relative_points(a, rows)
            init = np.broadcast_to(np.eye(d), (rows.size, d, d))
            hrel, _, _ = karcher_mean_array(r, self._w[rows], init=init, tol=self.tol.karcher_tol,
                                            max_iter=self.tol.karcher_max_iter)
            root, _ = spd_sqrt(hrel)
            ids = self.interior[rows]
            a[ids] = normalize_factors(a[ids] @ root)
        return a

    def _global_step(self, a: np.ndarray, energy: float):
        rows = np.arange(self.interior.size)
        g = np.sum(self._w[..., None, None] * spd_log(self._relative_points(a, rows)), axis=1)
        av = a[self.interior]
        o = _polar_rotation(av)
        g_world = o @ g @ np.swapaxes(o, -1, -2)
        d = a.shape[-1]
        step = self._lu.solve(g_world.reshape(-1, d * d)).reshape(-1, d, d)
        step = trace_free(sym(np.swapaxes(o, -1, -2) @ step @ o))
        for t in BACKTRACK_STEPS:
            candidate = a.copy()
            candidate[self.interior] = normalize_factors(av @ sym_exp(0.5 * t * step))
            e = self._energy(candidate)
            if e < energy:
                return candidate, e, True
        return a, energy, False

    def _energy(self, a: np.ndarray) -> float:
        return _factor_energy(self.mesh, a)

    # -- driver ------------------------------------------------------------

    def solve(self, boundary: VertexMap, init: Optional[VertexMap] = None) -> SolveResult:
        mesh = self.mesh
        if boundary.n == self.boundary.size:
            bvals = boundary.factors
        elif boundary.n == mesh.n_vertices:
            bvals = boundary.factors[self.boundary]
        else:
            raise DomainError(f"boundary map has {boundary.n} values for {self.boundary.size} boundary vertices")

        if init is None:
            init = self.boundary_constant_init(VertexMap(bvals))
        if init.n != mesh.n_vertices:
            raise DomainError(f"initial map has {init.n} values for {mesh.n_vertices} vertices")

        a = init.factors.copy()
        a[self.boundary] = bvals
        energy = self._energy(a)
        energies, moves = [energy], []
        slack = 1e-10
        global_steps = 0

        for it in range(1, self.tol.solver_max_sweeps + 1):
            previous = a.copy()
            a, energy, accepted = self._global_step(a, energy)
            global_steps += int(accepted)
            a = self._sweep(a)
            new_energy = self._energy(a)
            if new_energy > energy * (1.0 + slack) + slack:
                raise AssertionError(f"Dirichlet energy increased in sweep {it}: {energy!r} → {new_energy!r}")
            energy = new_energy
            energies.append(energy)
            move = float(np.max(relative_distance(previous[self.interior], a[self.interior])))
            moves.append(move)
            if it % 50 == 0:
                logger.debug(f"sweep {it}: energy {energy:.10e}, max move {move:.3e}")
            if move <= self.tol.solver_tol:
                logger.info(f"✅ Dirichlet solve converged in {it} sweeps (energy {energy:.6e}, "
                            f"{global_steps} global steps)")
                return SolveResult(VertexMap(a), True, it, energies, moves, global_steps)

        raise ConvergenceError(
            f"Dirichlet solve did not converge in {self.tol.solver_max_sweeps} sweeps (last move {moves[-1]:.3e})",
            moves)

    def boundary_constant_init(self, boundary: VertexMap) -> VertexMap:
        """Constant map at the barycentre of the boundary values."""
        pts = boundary.matrices()
        w = np.full(boundary.n, 1.0 / boundary.n)
        centre, _, _ = karcher_mean_array(pts, w, tol=self.tol.karcher_tol, max_iter=self.tol.karcher_max_iter)
        return VertexMap.constant(SpdPoint.from_matrix(centre), self.mesh.n_vertices)


def solve_dirichlet(mesh: DiskMesh, boundary: VertexMap, init: Optional[VertexMap] = None,
                    tolerances: Optional[Tolerances] = None) -> SolveResult:
    """Discrete harmonic map with the given boundary values."""
    return DirichletSolver(mesh, tolerances).solve(boundary, init)


def flat_dirichlet(mesh: DiskMesh, boundary_logs: np.ndarray, frame: np.ndarray) -> VertexMap:
    """Independent oracle for boundary values Q·exp(diag x)·Qᵀ in one flat.

    Each coordinate of x solves the weighted graph Laplace equation.
    """
    boundary_logs = np.asarray(boundary_logs, dtype=float)
    interior, bnd = mesh.interior_ids, mesh.boundary_ids
    lap = mesh.laplacian()
    rhs = -(lap[interior][:, bnd] @ boundary_logs)
    x = np.zeros((mesh.n_vertices, boundary_logs.shape[1]))
    x[bnd] = boundary_logs
    x[interior] = spla.spsolve(lap[interior][:, interior].tocsc(), rhs).reshape(interior.size, -1)
    x = x - x.mean(axis=1, keepdims=True)
    q = np.asarray(frame, dtype=float)
    return VertexMap(q[None, :, :] * np.exp(0.5 * x)[:, None, :])
