"""
Tests for monotone data, ordered-exponential curves and their sampled properties.
"""

import json
import math

import numpy as np
import pytest

from hitchin_harmonic.shared.errors import ConfigError, DomainError, RangeError
from hitchin_harmonic.flags import Unipotent, flag_distance, sigma_inf
from hitchin_harmonic.curves import (
    PiecewiseMonotone, QsGrid, build_curve, count_nontransverse, curve_qs_constant, limit_convergence,
    limit_family, load_curve_spec, positivity_sweep, qs_constant, random_homeomorphism, unipotent_at,
    veronese_curve, write_curve_spec,
)


def test_monotone_map_validation():
    with pytest.raises(DomainError):
        PiecewiseMonotone([0.0, 0.0], [0.0, 1.0])
    with pytest.raises(DomainError):
        PiecewiseMonotone([0.0, 1.0, 2.0], [0.0, 1.0, 1.0])
    with pytest.raises(DomainError):
        PiecewiseMonotone([0.0, 1.0], [1.0, 0.0])


def test_monotone_map_extends_affinely():
    phi = PiecewiseMonotone.power(2.0, extent=3)
    assert phi(2.0) == pytest.approx(4.0)
    assert phi(-2.0) == pytest.approx(-4.0)
    assert phi(4.0) == pytest.approx(9.0 + 5.0)
    assert phi.slope_at(-10.0) == pytest.approx(5.0)


def test_normalization():
    phi = PiecewiseMonotone([-1.0, 3.0], [2.0, 10.0]).normalized()
    assert phi.is_normalized
    assert phi(0.5) == pytest.approx(0.5)
    assert not PiecewiseMonotone([0.0, 2.0], [0.0, 1.0]).is_normalized


def test_random_homeomorphisms_are_normalized(rng):
    for _ in range(5):
        phi = random_homeomorphism(rng)
        assert phi.is_normalized
        assert np.all(phi.slopes > 0)


def test_veronese_unipotent_entries(veronese3):
    for t in (-3.0, 0.4, 5.0):
        n = unipotent_at(veronese3, t).n
        assert n[0, 1] == pytest.approx(t, abs=1e-12)
        assert n[1, 2] == pytest.approx(t, abs=1e-12)
        assert n[0, 2] == pytest.approx(t * t / 2.0, rel=1e-12, abs=1e-12)


def test_superdiagonal_tracks_the_monotone_map(rng):
    phi = random_homeomorphism(rng)
    curve = build_curve([phi])
    for t in (-20.0, -0.5, 0.0, 0.7, 13.0):
        assert curve.n(t)[0, 1] == pytest.approx(phi(t), abs=1e-12 * max(1.0, abs(phi(t))))


def test_flow_property(rng):
    curve = build_curve([random_homeomorphism(rng), random_homeomorphism(rng)])
    a, b, c = -5.0, 0.3, 7.5
    lhs = curve.transition(a, c)
    rhs = curve.transition(a, b) @ curve.transition(b, c)
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-10)
    assert curve.transition(c, a) @ lhs == pytest.approx(np.eye(3), abs=1e-8)


def test_build_rejects_unnormalized_maps():
    with pytest.raises(DomainError):
        build_curve([PiecewiseMonotone([0.0, 2.0], [0.0, 1.0])])
    with pytest.raises(DomainError):
        build_curve([])


def test_flip_chart_agrees_with_the_window_chart(veronese3):
    assert veronese3.chart_gluing_defect() < 1e-6
    model = Unipotent.from_superdiagonal([100.0, 100.0]).flag()
    assert flag_distance(veronese3.eval_flag(100.0), model) < 1e-6
    assert flag_distance(veronese3.eval_flag(math.inf), sigma_inf(3)) == pytest.approx(0.0, abs=1e-14)


def test_curve_extends_with_the_data_end_slopes():
    # breakpoints beyond the window, with a kink between the window and the ends
    phi = PiecewiseMonotone([-8.0, -6.0, 0.0, 1.0, 6.0, 8.0], [-20.0, -12.0, 0.0, 1.0, 11.0, 17.0])
    curve = build_curve([phi], window=4.0)
    assert curve.end_slopes[0] == pytest.approx([4.0])
    assert curve.end_slopes[1] == pytest.approx([3.0])
    for t in (-10.0, -7.0, 5.0, 7.0, 10.0):
        assert curve.n(t)[0, 1] == pytest.approx(phi(t))
    assert curve.chart_gluing_defect() < 1e-6
    model = Unipotent.from_superdiagonal([phi(10.0)]).flag()
    assert flag_distance(curve.eval_flag(10.0), model) < 1e-6


def test_window_without_flip_raises():
    curve = veronese_curve(3, allow_flip=False)
    with pytest.raises(RangeError):
        curve.eval_flag(100.0)
    with pytest.raises(DomainError):
        curve.eval_flag(math.nan)


def test_veronese_triples_are_positive(veronese3, rng):
    report = positivity_sweep(veronese3, rng, samples=40, extent=10.0)
    assert report["failures"] == []
    assert report["positive"] == report["samples"]
    assert report["min_margin"] > 0


def test_random_curve_triples_are_positive(rng):
    curve = build_curve([random_homeomorphism(rng), random_homeomorphism(rng)])
    report = positivity_sweep(curve, rng, samples=40, extent=10.0)
    assert report["failures"] == []


def test_qs_constant_examples():
    assert qs_constant(PiecewiseMonotone.identity())["K"] == pytest.approx(1.0)
    affine = PiecewiseMonotone([0.0, 1.0], [-3.0, -1.0])
    assert qs_constant(affine)["K"] == pytest.approx(1.0)
    result = qs_constant(PiecewiseMonotone.power(2.0), QsGrid(extent=4.0, step=0.5, max_t=4.0))
    assert result["K"] >= 3.0 - 1e-12


def test_veronese_curve_is_one_quasisymmetric(veronese3, rng):
    result = curve_qs_constant(veronese3, rng, samples=20, mobius_samples=0, extent=5.0)
    assert result["samples"] > 0
    assert result["K"] == pytest.approx(1.0, abs=1e-5)


def test_nontransverse_count_is_bounded(veronese3, rng):
    for k in (1, 2):
        for _ in range(3):
            report = count_nontransverse(veronese3, rng.normal(size=(3, k)), samples=500)
            assert report.total <= k * (3 - k)


def test_nontransverse_count_on_a_perturbed_curve(rng):
    curve = build_curve([random_homeomorphism(rng), random_homeomorphism(rng)])
    for k in (1, 2):
        for _ in range(3):
            report = count_nontransverse(curve, rng.normal(size=(3, k)), samples=500)
            assert report.total <= k * (3 - k)


@pytest.mark.slow
def test_nontransverse_counts_over_a_hundred_subspaces(veronese3, rng):
    perturbed = build_curve([random_homeomorphism(rng), random_homeomorphism(rng)])
    for curve in (veronese3, perturbed):
        for k in (1, 2):
            worst = max(count_nontransverse(curve, rng.normal(size=(3, k)), samples=1000).total
                        for _ in range(100))
            assert worst <= k * (3 - k)


def test_subspace_of_sigma_inf_is_transverse_at_finite_parameters(veronese3):
    report = count_nontransverse(veronese3, np.eye(3)[:, :1], samples=500)
    assert report.count == 0


def test_constructed_tangency_is_found(veronese3):
    t0 = 0.37
    v = veronese3.eval_flag(t0).subspace(1)
    report = count_nontransverse(veronese3, v, samples=2000)
    assert report.count >= 1
    found = report.locations + report.tangential
    assert min(abs(t - t0) for t in found) < 1e-3


def test_count_rejects_bad_subspace(veronese3):
    with pytest.raises(DomainError):
        count_nontransverse(veronese3, np.eye(3))


def test_limit_family_converges(rng):
    phis = [random_homeomorphism(rng), random_homeomorphism(rng)]
    limit = build_curve(phis)
    family = limit_family(phis, [0.5, 0.1, 0.01], rng)
    gaps = limit_convergence(limit, family, np.linspace(-5.0, 5.0, 11))
    assert gaps[-1] < gaps[0]
    assert gaps[-1] < 0.1


def test_curve_file_round_trip(tmp_path, rng):
    phis = [random_homeomorphism(rng), random_homeomorphism(rng)]
    path = tmp_path / "curve.json"
    write_curve_spec(path, phis, 24.0)
    loaded, window = load_curve_spec(path)
    assert window == 24.0
    assert len(loaded) == 2
    for phi, back in zip(phis, loaded):
        assert back(back.breakpoints) == pytest.approx(phi(back.breakpoints), abs=1e-12)


def test_curve_file_errors_name_the_field(tmp_path):
    path = tmp_path / "curve.json"
    path.write_text(json.dumps({"d": 3, "breakpoints": [0.0, 1.0], "values": [[0.0, 1.0]]}))
    with pytest.raises(ConfigError) as exc:
        load_curve_spec(path)
    assert exc.value.field_path == "curve.values"

    path.write_text(json.dumps({"d": 9, "breakpoints": [0.0, 1.0], "values": [[0.0, 1.0]]}))
    with pytest.raises(ConfigError) as exc:
        load_curve_spec(path)
    assert exc.value.field_path == "curve.d"

    with pytest.raises(ConfigError):
        load_curve_spec(tmp_path / "missing.json")
