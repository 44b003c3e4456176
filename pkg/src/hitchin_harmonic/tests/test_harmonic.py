"""
Tests for disk meshes, the Dirichlet solver and the harmonic-map diagnostics.
"""

import math

import numpy as np
import pytest
from scipy.stats import special_ortho_group

from hitchin_harmonic.shared.config import Tolerances
from hitchin_harmonic.shared.errors import ConvergenceError, DomainError
from hitchin_harmonic.spd import SpdPoint, distance
from hitchin_harmonic.spd.inequalities import quadrilateral_lengths
from hitchin_harmonic.embedding import identity_embedding, veronese_embedding
from hitchin_harmonic.harmonic import (
    DirichletSolver, VertexMap, build_mesh, diagnostics, dirichlet_energy, edge_lipschitz, exhaust,
    flat_dirichlet, interior_quadrilateral, maximum_principle_gap, mollify, quadrilateral_diagnostics,
    refinement_order, ring_size, solve_dirichlet, uniqueness_gap,
)


@pytest.fixture(scope="module")
def curved_problem(small_mesh):
    """Veronese values on the small mesh and the harmonic map with their boundary values."""
    f = VertexMap.from_embedding(veronese_embedding(3), small_mesh)
    result = solve_dirichlet(small_mesh, f.take(small_mesh.boundary_ids), init=f)
    return f, result


def test_ring_sizes_follow_the_circumference():
    assert ring_size(0, 0.4) == 1
    for j in range(1, 6):
        expected = max(3, math.ceil(2.0 * math.pi * math.sinh(0.4 * j) / 0.4))
        assert ring_size(j, 0.4) == expected


def test_mesh_structure(small_mesh):
    sizes = [ring_size(j, 0.4) for j in range(6)]
    assert small_mesh.n_vertices == sum(sizes)
    assert small_mesh.rings == 5
    assert small_mesh.boundary_ids.size == sizes[-1]
    assert np.all(small_mesh.weights > 0)
    assert np.all(small_mesh.areas > 0)
    lap = small_mesh.laplacian()
    assert abs(lap - lap.T).max() == pytest.approx(0.0, abs=1e-14)


def test_inner_meshes_are_prefixes(small_mesh):
    inner = build_mesh(1.2, 0.4)
    assert small_mesh.z[:inner.n_vertices] == pytest.approx(inner.z, abs=1e-14)


def test_colouring_separates_interior_neighbours(small_mesh):
    colour = np.full(small_mesh.n_vertices, -1)
    for c, members in enumerate(small_mesh.colouring()):
        colour[members] = c
    i, j = small_mesh.edges[:, 0], small_mesh.edges[:, 1]
    both_interior = (colour[i] >= 0) & (colour[j] >= 0)
    assert np.all(colour[i][both_interior] != colour[j][both_interior])


def test_mesh_rejects_bad_spacing():
    with pytest.raises(DomainError):
        build_mesh(1.0, 2.0)
    with pytest.raises(DomainError):
        build_mesh(1.0, 0.0)


def test_constant_boundary_gives_constant_map(small_mesh, rng):
    p = SpdPoint.random(3, rng)
    boundary = VertexMap.constant(p, small_mesh.boundary_ids.size)
    result = solve_dirichlet(small_mesh, boundary)
    assert result.converged
    assert np.max(result.h.distances_to_point(p)) == pytest.approx(0.0, abs=1e-8)


def test_flat_boundary_matches_the_linear_oracle(small_mesh, rng):
    q = special_ortho_group.rvs(3, random_state=rng)
    logs = rng.normal(scale=0.8, size=(small_mesh.boundary_ids.size, 3))
    logs = logs - logs.mean(axis=1, keepdims=True)
    boundary = VertexMap(q[None, :, :] * np.exp(0.5 * logs)[:, None, :])
    result = solve_dirichlet(small_mesh, boundary)
    oracle = flat_dirichlet(small_mesh, logs, q)
    assert np.max(result.h.distances_to(oracle)) == pytest.approx(0.0, abs=1e-8)


def test_energy_never_increases(curved_problem):
    _, result = curved_problem
    assert result.converged
    energies = np.array(result.energies)
    assert np.all(np.diff(energies) <= 1e-10 * energies[:-1] + 1e-10)
    assert result.to_dict()["iterations"] == result.iterations


def test_harmonic_map_has_least_energy(curved_problem, small_mesh):
    f, result = curved_problem
    assert dirichlet_energy(small_mesh, result.h) <= dirichlet_energy(small_mesh, f) + 1e-10


def test_solution_is_unique(curved_problem, small_mesh):
    f, result = curved_problem
    solver = DirichletSolver(small_mesh)
    boundary = f.take(small_mesh.boundary_ids)
    other = solver.solve(boundary, solver.boundary_constant_init(boundary))
    assert uniqueness_gap(result.h, other.h) < 1e-5


def test_maximum_principle(curved_problem, small_mesh, rng):
    _, result = curved_problem
    for _ in range(3):
        y = SpdPoint.random(3, rng)
        assert maximum_principle_gap(small_mesh, result.h, y) <= 1e-6


def test_diagnostics_on_a_solved_map(curved_problem, small_mesh, rng):
    f, result = curved_problem
    y = SpdPoint.random(3, rng)
    far = SpdPoint.diagonal([4.0, 0.0, -4.0])
    report = diagnostics(result.h, small_mesh, f, y, rng, far_y=far, pairs=50)
    assert report["bochner_min"] >= -1e-4
    assert report["subharmonic_min"] >= -1e-4
    assert report["quadrilateral"]["violations"] == 0
    assert report["maximum_principle_gap"] <= 1e-6
    assert report["harnack_D"] > 0
    assert report["harnack_ratio"] == pytest.approx(report["gradient_sup"] / math.sqrt(report["harnack_D"]))


def test_interior_quadrilateral_labels():
    f_x = SpdPoint.diagonal([0.0, 0.0, 0.0])
    f_z = SpdPoint.diagonal([1.0, 0.0, -1.0])
    h_x = SpdPoint.diagonal([0.3, 0.1, -0.4])
    h_z = SpdPoint.diagonal([2.0, -0.5, -1.5])
    sides = quadrilateral_lengths(interior_quadrilateral(f_x, f_z, h_x, h_z))
    assert sides["D"] == pytest.approx(distance(f_x, h_x))
    assert sides["D'"] == pytest.approx(distance(f_z, h_z))
    assert sides["E"] == pytest.approx(distance(f_x, f_z))
    assert sides["E'"] == pytest.approx(distance(h_x, h_z))
    assert sides["F"] == pytest.approx(distance(f_z, h_x))
    assert sides["F'"] == pytest.approx(distance(f_x, h_z))


def test_quadrilateral_skips_pairs_without_displacement(curved_problem, small_mesh, rng):
    f, result = curved_problem
    report = quadrilateral_diagnostics(small_mesh, f, f, rng, pairs=20)
    assert report["pairs"] == 0
    assert report["max_excess"] is None
    report = quadrilateral_diagnostics(small_mesh, f, result.h, rng, pairs=40)
    assert report["pairs"] > 0
    assert report["violations"] == 0


def test_solver_input_checks(small_mesh, rng):
    p = SpdPoint.random(3, rng)
    with pytest.raises(DomainError):
        solve_dirichlet(small_mesh, VertexMap.constant(p, 5))
    boundary = VertexMap.constant(p, small_mesh.boundary_ids.size)
    with pytest.raises(DomainError):
        solve_dirichlet(small_mesh, boundary, init=VertexMap.constant(p, 3))
    with pytest.raises(DomainError):
        VertexMap(np.eye(3))


def test_sweep_cap_raises_convergence_error(small_mesh):
    f = VertexMap.from_embedding(veronese_embedding(3), small_mesh)
    start = VertexMap.constant(SpdPoint.identity(3), small_mesh.n_vertices)
    with pytest.raises(ConvergenceError) as exc:
        solve_dirichlet(small_mesh, f.take(small_mesh.boundary_ids), init=start,
                        tolerances=Tolerances(solver_max_sweeps=1))
    assert len(exc.value.residuals) == 1


def test_identity_embedding_is_edge_isometric(small_mesh):
    f = VertexMap.from_embedding(identity_embedding(), small_mesh)
    assert edge_lipschitz(small_mesh, f) == pytest.approx(1.0, rel=1e-9)


def test_mollified_values_stay_within_the_sample_spread(small_mesh):
    h, stats = mollify(veronese_embedding(3), small_mesh)
    assert h.n == small_mesh.n_vertices
    assert stats["sup_distance_to_f"] <= stats["sup_sample_spread"] + 1e-9


def test_refinement_order():
    assert refinement_order([0.1, 0.2, 0.4], [0.01, 0.04, 0.16]) == pytest.approx(2.0)
    assert math.isnan(refinement_order([0.1], [0.01]))


def test_exhaustion_over_two_radii():
    result = exhaust(veronese_embedding(3), [1.0, 2.0], 0.5)
    rows = result["rows"]
    assert len(rows) == 2
    assert "sup_distance_to_previous" not in rows[0]
    assert rows[1]["sup_distance_to_previous"] >= 0.0
    assert rows[1]["boundary_bound"] >= 0.0
    assert all(r["solve"]["converged"] for r in rows)
    assert len(result["solutions"]) == 2
    with pytest.raises(DomainError):
        exhaust(veronese_embedding(3), [2.0, 1.0], 0.5)


@pytest.mark.slow
def test_identity_boundary_reproduces_the_identity_in_dimension_two():
    errors = []
    deltas = [0.2, 0.1, 0.05]
    for delta in deltas:
        mesh = build_mesh(4.0, delta)
        f = VertexMap.from_embedding(identity_embedding(), mesh)
        result = solve_dirichlet(mesh, f.take(mesh.boundary_ids), init=f)
        assert result.converged
        errors.append(float(np.max(result.h.distances_to(f))))
    assert errors[-1] <= 1e-2
    assert refinement_order(deltas, errors) >= 1.0


@pytest.mark.slow
def test_veronese_exhaustion_stabilizes():
    result = exhaust(veronese_embedding(3), [2.0, 4.0, 6.0], 0.1)
    rows = result["rows"]
    assert all(r["solve"]["converged"] for r in rows)
    assert result["interior_growth"] is None or result["interior_growth"] <= 0.10
    assert rows[1]["sup_distance_to_previous"] <= 5e-2
    assert rows[2]["sup_distance_to_previous"] <= 5e-2
