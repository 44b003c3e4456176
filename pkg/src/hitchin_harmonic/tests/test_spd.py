"""
Tests for the SPD model of Y_d: metric, geodesics, centres of mass, curvature, four-point inequalities.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hitchin_harmonic.shared.errors import DomainError
from hitchin_harmonic.spd import (
    CartanVector, SpdPoint, TangentSym, distance, exp_map, geodesic, karcher_mean, log_map,
    parallelogram_check, ptolemy_check, quad_cr_bound_check, sampled_curvature, sectional_curvature,
    vector_distance,
)


@st.composite
def spd_points(draw, d=3):
    seed = draw(st.integers(min_value=0, max_value=2 ** 31))
    scale = draw(st.floats(min_value=0.05, max_value=2.0))
    return SpdPoint.random(d, np.random.default_rng(seed), scale=scale)


@st.composite
def quadruples(draw):
    d = draw(st.sampled_from([3, 4]))
    return [draw(spd_points(d)) for _ in range(4)]


def test_distance_of_diagonal_points_is_calibrated():
    p = SpdPoint.identity(2)
    q = SpdPoint.diagonal([1.0, -1.0])
    v = vector_distance(p, q)
    assert v.norm == pytest.approx(1.0, abs=1e-14)
    assert v.roots()[0] == pytest.approx(1.0, abs=1e-14)


def test_spd_point_rejects_bad_matrices():
    with pytest.raises(DomainError):
        SpdPoint(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(DomainError):
        SpdPoint(np.diag([2.0, 2.0]))
    with pytest.raises(DomainError):
        SpdPoint(np.diag([-1.0, -1.0]))


def test_cartan_vector_invariants():
    with pytest.raises(DomainError):
        CartanVector(np.array([-1.0, 1.0]))
    with pytest.raises(DomainError):
        CartanVector(np.array([2.0, 1.0]))
    c = CartanVector.from_unsorted([0.0, 3.0, -1.0])
    assert np.all(np.diff(c.v) <= 0)
    assert c.opposite().v == pytest.approx(-c.v[::-1])


@settings(max_examples=50, deadline=None)
@given(spd_points(), spd_points(), spd_points())
def test_metric_axioms(p, q, r):
    assert distance(p, p) == pytest.approx(0.0, abs=1e-7)
    assert distance(p, q) == pytest.approx(distance(q, p), rel=1e-8, abs=1e-10)
    assert distance(p, r) <= distance(p, q) + distance(q, r) + 1e-9


@settings(max_examples=30, deadline=None)
@given(spd_points(), spd_points(), st.integers(min_value=0, max_value=2 ** 31))
def test_congruence_is_an_isometry(p, q, seed):
    g = np.random.default_rng(seed).normal(size=(3, 3)) + 3.0 * np.eye(3)
    assert distance(p.act(g), q.act(g)) == pytest.approx(distance(p, q), rel=1e-7, abs=1e-9)


def test_geodesic_is_constant_speed(rng):
    p, q = SpdPoint.random(3, rng), SpdPoint.random(3, rng)
    total = distance(p, q)
    for t in (0.25, 0.5, 0.8):
        m = geodesic(p, q, t)
        assert distance(p, m) == pytest.approx(t * total, rel=1e-9)
        assert distance(m, q) == pytest.approx((1 - t) * total, rel=1e-9)


def test_exp_inverts_log(rng):
    p, q = SpdPoint.random(4, rng), SpdPoint.random(4, rng)
    v = log_map(p, q)
    assert v.norm == pytest.approx(distance(p, q), rel=1e-10)
    assert distance(exp_map(v), q) == pytest.approx(0.0, abs=1e-8)


def test_tangent_vectors_must_be_trace_free():
    with pytest.raises(DomainError):
        TangentSym(np.eye(2), SpdPoint.identity(2))


def test_karcher_mean_of_two_points_is_the_midpoint(rng):
    p, q = SpdPoint.random(3, rng), SpdPoint.random(3, rng)
    mean = karcher_mean([p, q])
    assert distance(mean, geodesic(p, q, 0.5)) == pytest.approx(0.0, abs=1e-7)


def test_karcher_mean_of_commuting_points_averages_the_logs(rng):
    logs = rng.normal(size=(5, 4))
    weights = rng.uniform(0.1, 2.0, size=5)
    mean = karcher_mean([SpdPoint.diagonal(v) for v in logs], weights)
    expected = SpdPoint.diagonal(weights @ logs / weights.sum())
    assert distance(mean, expected) == pytest.approx(0.0, abs=1e-8)


def test_karcher_mean_rejects_bad_weights(rng):
    p = SpdPoint.random(3, rng)
    with pytest.raises(DomainError):
        karcher_mean([])
    with pytest.raises(DomainError):
        karcher_mean([p, p], [1.0, -1.0])


def test_root_plane_curvature_is_minus_one(rng):
    for d in (2, 3, 4):
        a = np.zeros((d, d))
        a[0, 1] = a[1, 0] = 1.0
        b = np.zeros((d, d))
        b[0, 0], b[1, 1] = 1.0, -1.0
        assert sectional_curvature(a, b) == pytest.approx(-1.0, abs=1e-14)
        assert sampled_curvature(SpdPoint.random(d, rng), a, b) == pytest.approx(-1.0, abs=1e-2)


def test_commuting_directions_are_flat():
    a = np.diag([1.0, -1.0, 0.0])
    b = np.diag([0.0, 1.0, -1.0])
    assert sectional_curvature(a, b) == 0.0


def test_degenerate_quadruple_is_trivial():
    p = SpdPoint.identity(3)
    assert ptolemy_check([p, p, p, p]) == pytest.approx((0.0, 0.0), abs=1e-12)


def test_flat_quadruple_satisfies_euclidean_ptolemy():
    # concyclic points in one flat give equality
    u1 = np.array([1.0, -1.0, 0.0]) / math.sqrt(2.0)
    u2 = np.array([1.0, 1.0, -2.0]) / math.sqrt(6.0)
    pts = [SpdPoint.diagonal(math.cos(t) * u1 + math.sin(t) * u2) for t in (0.0, 1.0, 2.5, 4.0)]
    lhs, rhs = ptolemy_check(pts)
    assert lhs == pytest.approx(rhs, rel=1e-9)


@settings(max_examples=100, deadline=None)
@given(quadruples())
def test_four_point_inequalities(q):
    for check in (ptolemy_check, parallelogram_check):
        lhs, rhs = check(q)
        assert lhs <= rhs + 1e-9 * max(1.0, rhs)
    if distance(q[0], q[1]) > 1e-6:
        lhs, rhs = quad_cr_bound_check(q)
        assert lhs <= rhs + 1e-9 * max(1.0, rhs)


def test_quadrilateral_bound_needs_distinct_first_pair():
    p = SpdPoint.identity(3)
    q = SpdPoint.diagonal([1.0, 0.0, -1.0])
    with pytest.raises(DomainError):
        quad_cr_bound_check([p, p, q, q])
