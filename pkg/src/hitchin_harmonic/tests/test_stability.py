"""
Tests for circle averages of Busemann functions and the stability certificates.
"""

import math

import numpy as np
import pytest
from scipy.stats import special_ortho_group

from hitchin_harmonic.shared.errors import DomainError
from hitchin_harmonic.hyp2 import I_POINT, HypPoint
from hitchin_harmonic.spd import IdealPoint, SpdPoint, fundamental_coweights
from hitchin_harmonic.embedding import (
    ConstantEmbedding, identity_embedding, product_embedding, veronese_embedding,
)
from hitchin_harmonic.stability import (
    CircleData, EtaSampler, busemann_circle_average, certify, drift_proxy, iterated_average,
    lattice_types, perturbation_bound, sample_centres, stability_integral, structured_frames, wall_types,
)


def plane_eta(rng):
    return IdealPoint.from_type(special_ortho_group.rvs(2, random_state=rng), [1.0, -1.0])


def tiny_sampler(d):
    return EtaSampler(d, frames=2, types=2, restarts=4)


def test_circle_average_values():
    assert busemann_circle_average(1.0) == pytest.approx(0.2402, abs=1e-4)
    assert busemann_circle_average(2.0) == pytest.approx(0.8676, abs=1e-4)
    assert busemann_circle_average(3.0) == pytest.approx(1.7108, abs=1e-4)


@pytest.mark.parametrize("r", [0.5, 1.0, 2.0, 3.0])
def test_plane_average_matches_the_closed_form(r, rng):
    x = HypPoint(0.4, 1.7)
    for _ in range(3):
        result = stability_integral(identity_embedding(), x, r, plane_eta(rng))
        assert result["S"] == pytest.approx(busemann_circle_average(r), rel=1e-8)
        assert result["quadrature_error"] < 1e-8


def test_constant_map_has_zero_average(rng):
    e = ConstantEmbedding(SpdPoint.random(3, rng))
    eta = IdealPoint.from_type(special_ortho_group.rvs(3, random_state=rng), [1.0, 0.2, -1.2])
    assert stability_integral(e, I_POINT, 2.0, eta)["S"] == pytest.approx(0.0, abs=1e-12)


def test_product_map_has_a_flat_direction():
    omega = fundamental_coweights(3)[:, 1]
    eta = IdealPoint.from_type(np.eye(3), omega)
    assert stability_integral(product_embedding(), I_POINT, 3.0, eta)["S"] == pytest.approx(0.0, abs=1e-10)


@pytest.mark.slow
def test_veronese_embedding_is_stable_at_scale_eight(rng):
    sampler = EtaSampler(3, frames=4, types=4, restarts=8)
    report = certify(veronese_embedding(3), sample_centres(rng, 2), 8.0, sampler, seed=3)
    assert report.passed
    assert report.inf_s >= 1.0
    assert report.inf_s / 8.0 >= 0.3


def test_product_map_is_not_stable():
    report = certify(product_embedding(), [I_POINT], 3.0, tiny_sampler(3), seed=1, n=64)
    assert report.inf_s == pytest.approx(0.0, abs=1e-8)
    assert report.to_dict()["status"] == "FAIL"


def test_plane_stability_threshold_crossing():
    low = certify(identity_embedding(), [I_POINT], 2.0, tiny_sampler(2))
    high = certify(identity_embedding(), [I_POINT], 3.0, tiny_sampler(2))
    assert not low.passed
    assert high.passed
    assert high.inf_s == pytest.approx(busemann_circle_average(3.0), rel=1e-6)


def test_certify_report_shape(rng):
    centres = sample_centres(rng, 3)
    assert centres[0] is I_POINT
    report = certify(veronese_embedding(3), centres, 2.0, tiny_sampler(3), seed=7, n=32, m_hat=1.0)
    data = report.to_dict()
    assert len(data["entries"]) == 3
    assert data["separation"] == pytest.approx(0.5, abs=1e-6)
    assert data["ratio_threshold"] == pytest.approx(0.5, abs=1e-6)
    assert data["inf_S_over_r"] == pytest.approx(data["inf_S"] / 2.0)
    assert len(report.rows()) > 0
    assert {"x_re", "x_im", "r", "frame", "type", "S"} <= set(report.rows()[0])


def test_certify_is_reproducible(rng):
    centres = sample_centres(rng, 2)
    first = certify(veronese_embedding(3), centres, 2.0, tiny_sampler(3), seed=3, n=32, max_workers=2)
    second = certify(veronese_embedding(3), centres, 2.0, tiny_sampler(3), seed=3, n=32, max_workers=1)
    assert first.inf_s == second.inf_s


def test_drift_on_the_plane():
    result = drift_proxy(identity_embedding(), [I_POINT], [1.0, 2.0, 3.0], tiny_sampler(2), m_hat=1.0)
    expected = [busemann_circle_average(r) / r for r in (1.0, 2.0, 3.0)]
    assert result["inf_S_over_r"] == pytest.approx(expected, rel=1e-6)
    assert result["non_decreasing"]
    assert result["reference"] == pytest.approx(1.0)
    with pytest.raises(DomainError):
        drift_proxy(identity_embedding(), [I_POINT], [2.0, 1.0], tiny_sampler(2))


def test_perturbation_bound(rng):
    eta = IdealPoint.from_type(special_ortho_group.rvs(3, random_state=rng), [1.0, 0.1, -1.1])
    f = veronese_embedding(3)
    g = veronese_embedding(3, basepoint="principal")
    result = perturbation_bound(f, g, HypPoint(0.2, 1.1), 1.5, eta, n=64)
    assert result["holds"]
    assert result["difference"] <= result["bound"] + 1e-9


def test_iterated_average_on_the_plane(rng):
    c = busemann_circle_average(1.0)
    values = iterated_average(identity_embedding(), I_POINT, 1.0, plane_eta(rng), k=2, n=32)
    assert values == pytest.approx([c, 2.0 * c], rel=1e-8)
    with pytest.raises(DomainError):
        iterated_average(identity_embedding(), I_POINT, 1.0, plane_eta(rng), k=0)


def test_circle_data_rejects_bad_radius():
    with pytest.raises(DomainError):
        CircleData(identity_embedding(), I_POINT, 0.0)


def test_eta_candidate_sets(rng):
    assert len(structured_frames(3)) == 6
    assert len(structured_frames(5)) == 10
    for v in wall_types(4) + lattice_types(4, 8):
        assert abs(v.sum()) < 1e-12
        assert np.all(np.diff(v) <= 1e-12)
    candidates = tiny_sampler(3).candidates(rng)
    assert all(abs(eta.type_vec.norm - 1.0) < 1e-10 for eta in candidates)
    with pytest.raises(DomainError):
        EtaSampler(1).candidates(rng)
