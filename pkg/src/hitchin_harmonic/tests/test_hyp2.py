"""
Tests for the hyperbolic plane helpers.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hitchin_harmonic.shared.errors import DomainError
from hitchin_harmonic.hyp2 import (
    INF, I_POINT, HypPoint, IdealTriple, Mobius, boundary_estimate_bound, chart_flip, circle_array,
    cross_ratio, disk_samples, exit_constant, foot_point, frame_of_triple, gamma_integral, green_function,
    hyp_distance, point_at, rotation_about, section,
)


@st.composite
def half_plane_points(draw):
    x = draw(st.floats(min_value=-20.0, max_value=20.0))
    y = draw(st.floats(min_value=0.05, max_value=20.0))
    return HypPoint(x, y)


@st.composite
def mobius_maps(draw):
    a, b, c = (draw(st.floats(min_value=-3.0, max_value=3.0)) for _ in range(3))
    d = draw(st.floats(min_value=-3.0, max_value=3.0))
    det = a * d - b * c
    if det <= 0.1:
        return Mobius(1.0, draw(st.floats(min_value=-3.0, max_value=3.0)), 0.0, 1.0)
    s = math.sqrt(det)
    return Mobius(a / s, b / s, c / s, d / s)


def test_distance_from_i_along_the_imaginary_axis():
    assert hyp_distance(I_POINT, HypPoint(0.0, math.e)) == pytest.approx(1.0, abs=1e-14)
    assert hyp_distance(I_POINT, I_POINT) == 0.0


@settings(max_examples=100, deadline=None)
@given(half_plane_points(), half_plane_points(), mobius_maps())
def test_mobius_maps_are_isometries(p, q, g):
    before = hyp_distance(p, q)
    after = hyp_distance(g.apply(p), g.apply(q))
    assert after == pytest.approx(before, rel=1e-7, abs=1e-7)


@settings(max_examples=100, deadline=None)
@given(half_plane_points(), half_plane_points(), half_plane_points())
def test_triangle_inequality(p, q, r):
    assert hyp_distance(p, r) <= hyp_distance(p, q) + hyp_distance(q, r) + 1e-9


def test_cross_ratio_normalisation(rng):
    for x in rng.uniform(-50.0, 50.0, 1000):
        if abs(x) < 1e-6 or abs(x - 1.0) < 1e-6:
            continue
        assert cross_ratio((x, 0.0, 1.0, INF)) == pytest.approx(x, rel=1e-12, abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(mobius_maps())
def test_cross_ratio_is_mobius_invariant(g):
    quad = (-2.0, -0.5, 0.7, 3.0)
    image = [g.apply_ideal(t) for t in quad]
    assert cross_ratio(image) == pytest.approx(cross_ratio(quad), rel=1e-8)


def test_cross_ratio_rejects_coincident_points():
    with pytest.raises(DomainError):
        cross_ratio((1.0, 1.0, 2.0, INF))


def test_frame_and_foot_point_of_standard_triple():
    triple = IdealTriple(0.0, 1.0, INF)
    g = frame_of_triple(triple)
    assert g.apply_ideal(0.0) == pytest.approx(0.0, abs=1e-14)
    assert math.isinf(g.apply_ideal(INF))
    foot = foot_point(triple)
    assert foot.x == pytest.approx(0.0, abs=1e-14)
    assert foot.y == pytest.approx(1.0, abs=1e-14)


def test_sections_lie_over_their_point():
    z = HypPoint(0.3, 2.0)
    for kind in ("upper", "symmetric"):
        foot = foot_point(section(z, kind))
        assert hyp_distance(foot, z) == pytest.approx(0.0, abs=1e-10)
    with pytest.raises(DomainError):
        section(z, "lower")


def test_circle_points_are_at_radius():
    centre = HypPoint(1.5, 0.4)
    z = circle_array(centre, 2.5, 32)
    for w in z:
        assert hyp_distance(centre, HypPoint.from_complex(w)) == pytest.approx(2.5, rel=1e-12)


def test_circle_rejects_bad_input():
    with pytest.raises(DomainError):
        circle_array(I_POINT, 0.0, 16)
    with pytest.raises(DomainError):
        circle_array(I_POINT, 1.0, 2)


def test_rotation_fixes_its_centre():
    z = HypPoint(-1.0, 0.5)
    g = rotation_about(z, 1.1)
    w = g.apply(z)
    assert hyp_distance(w, z) == pytest.approx(0.0, abs=1e-12)
    p = HypPoint.from_complex(complex(point_at(z, 1.0, 0.0)))
    q = HypPoint.from_complex(complex(point_at(z, 1.0, 1.1)))
    assert hyp_distance(g.apply(p), q) == pytest.approx(0.0, abs=1e-9)


def test_chart_flip_swaps_zero_and_infinity():
    assert math.isinf(chart_flip(0.0))
    assert chart_flip(INF) == 0.0
    assert chart_flip(2.0) == -0.5


def test_disk_samples_weights_and_extent():
    z, w = disk_samples(I_POINT, 1.5, 4)
    assert w.sum() == pytest.approx(1.0, abs=1e-14)
    assert np.all(w > 0)
    d = np.array([hyp_distance(I_POINT, HypPoint.from_complex(p)) for p in z])
    assert d.max() <= 1.5 + 1e-12


def test_gamma_integral_closed_form_matches_quadrature():
    for a, b in [(0.1, 1.0), (1.0, 3.0), (2.0, 2.5)]:
        assert gamma_integral(a, b) == pytest.approx(gamma_integral(a, b, method="quad"), rel=1e-10)
    assert gamma_integral(1.0, 1.0) == 0.0


def test_gamma_integral_domain():
    with pytest.raises(DomainError):
        gamma_integral(0.0, 1.0)
    with pytest.raises(DomainError):
        gamma_integral(2.0, 1.0)


def test_green_function_and_exit_constant():
    assert green_function(1.0) == pytest.approx(-math.log(math.tanh(0.5)), rel=1e-14)
    for r in (0.5, 2.0, 6.0):
        alpha = exit_constant(r)
        assert 0.0 < alpha < 1.0
    assert boundary_estimate_bound(2.0, 0.0) == 0.0
    assert boundary_estimate_bound(2.0, 1.0) == pytest.approx(9.0 / exit_constant(2.0))
