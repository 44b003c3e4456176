"""
Discrete harmonic maps into Y_d on hyperbolic disks.
"""

from .mesh import DiskMesh, build_mesh, ring_size
from .solver import (
    VertexMap,
    SolveResult,
    DirichletSolver,
    solve_dirichlet,
    flat_dirichlet,
    dirichlet_energy,
    edge_distances,
    relative_distance,
    normalize_factors,
)
from .mollify import mollify, mollify_points, edge_lipschitz
from .exhaust import exhaust
from .diagnostics import (
    diagnostics,
    distance_laplacians,
    energy_density,
    gradient_norm,
    maximum_principle_gap,
    uniqueness_gap,
    refinement_order,
    quadrilateral_diagnostics,
    interior_quadrilateral,
)

__all__ = [
    'DiskMesh',
    'build_mesh',
    'ring_size',
    'VertexMap',
    'SolveResult',
    'DirichletSolver',
    'solve_dirichlet',
    'flat_dirichlet',
    'dirichlet_energy',
    'edge_distances',
    'relative_distance',
    'normalize_factors',
    'mollify',
    'mollify_points',
    'edge_lipschitz',
    'exhaust',
    'diagnostics',
    'distance_laplacians',
    'energy_density',
    'gradient_norm',
    'maximum_principle_gap',
    'uniqueness_gap',
    'refinement_order',
    'quadrilateral_diagnostics',
    'interior_quadrilateral',
]
