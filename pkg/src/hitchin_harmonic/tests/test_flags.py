"""
Tests for flags, total positivity, triple normalisation and cross ratios.
"""

import numpy as np
import pytest

from hitchin_harmonic.hyp2 import INF, cross_ratio
from hitchin_harmonic.shared.errors import (
    DomainError, PositivityViolation, TransversalityError, UnsupportedSizeError,
)
from hitchin_harmonic.flags import (
    Flag, Unipotent, admissible_minors, busemann_sum_minimizer, cross_ratio_i, flag_distance,
    flat_basepoint, log_cross_ratio_i, normalize_triple, positive_triple_busemann_sum,
    positivity_margin_array, principal_image, project_pd, properness_profile, quadruple_positive,
    sigma0, sigma_inf, standard_position, totally_positive, transverse,
)
from hitchin_harmonic.spd import SpdPoint, distance


def xi(t, d=3):
    """exp(tN)·σ₀, the model positive curve."""
    return Unipotent.from_superdiagonal([t] * (d - 1)).flag()


def random_sl(d, rng):
    g = rng.normal(size=(d, d)) + 2.0 * np.eye(d)
    return g / abs(np.linalg.det(g)) ** (1.0 / d)


def test_standard_pair_is_transverse(standard_flags):
    s0, sinf = standard_flags
    assert transverse(s0, sinf).ok
    check = transverse(s0, s0)
    assert not check.ok
    assert check.margin == pytest.approx(0.0, abs=1e-12)


def test_flag_rejects_singular_basis():
    with pytest.raises(DomainError):
        Flag(np.array([[1.0, 1.0], [1.0, 1.0]]))


def test_flag_distance():
    assert flag_distance(sigma0(3), sigma0(3)) == pytest.approx(0.0, abs=1e-14)
    assert flag_distance(sigma0(3), sigma_inf(3)) == pytest.approx(1.0, abs=1e-12)


def test_totally_positive_examples():
    good = Unipotent(np.array([[1.0, 1.0, 0.5], [0.0, 1.0, 1.0], [0.0, 0.0, 1.0]]))
    check = totally_positive(good)
    assert check.ok
    assert check.margin == pytest.approx(0.5)
    assert check.witness == ((0, 1), (1, 2))

    bad = Unipotent(np.array([[1.0, 1.0, 1.0], [0.0, 1.0, 1.0], [0.0, 0.0, 1.0]]))
    check = totally_positive(bad)
    assert not check.ok
    assert check.margin == pytest.approx(0.0, abs=1e-14)
    assert check.witness == ((0, 1), (1, 2))


def test_exponential_of_positive_superdiagonal_is_totally_positive(rng):
    for d in range(2, 7):
        n = Unipotent.from_superdiagonal(rng.uniform(0.1, 2.0, d - 1))
        assert totally_positive(n).ok
    stack = np.stack([Unipotent.from_superdiagonal(rng.uniform(0.1, 2.0, 3)).n for _ in range(5)])
    assert np.all(positivity_margin_array(stack) > 0)


def test_minor_enumeration_is_bounded():
    assert len(admissible_minors(2)) == 1
    with pytest.raises(UnsupportedSizeError):
        admissible_minors(7)


def test_unipotent_validation_and_inverse():
    with pytest.raises(DomainError):
        Unipotent(np.array([[1.0, 0.0], [1.0, 1.0]]))
    n = Unipotent.from_superdiagonal([1.0, 2.0])
    assert n.inverse().n @ n.n == pytest.approx(np.eye(3), abs=1e-12)
    assert n.superdiagonal() == pytest.approx([1.0, 2.0])


def test_normalize_recovers_the_model_triple():
    n = Unipotent.from_superdiagonal([1.0, 1.0])
    g, m = normalize_triple(sigma0(3), n.flag(), sigma_inf(3))
    assert m.n == pytest.approx(n.n, abs=1e-10)
    assert abs(np.linalg.det(g)) == pytest.approx(1.0, rel=1e-12)


def test_normalization_is_invariant_under_the_group(rng):
    triple = (xi(-1.0), xi(0.5), xi(3.0))
    _, n = normalize_triple(*triple)
    for _ in range(5):
        h = random_sl(3, rng)
        _, moved = normalize_triple(*(f.act(h) for f in triple))
        assert moved.n == pytest.approx(n.n, abs=1e-8)


def test_normalize_rejects_bad_triples():
    with pytest.raises(TransversalityError):
        normalize_triple(sigma0(3), sigma0(3), sigma_inf(3))
    n = Unipotent(np.array([[1.0, 1.0, 2.0], [0.0, 1.0, 1.0], [0.0, 0.0, 1.0]]))
    with pytest.raises(PositivityViolation) as exc:
        normalize_triple(sigma0(3), n.flag(), sigma_inf(3))
    assert exc.value.value == pytest.approx(-1.0)


def test_project_pd_of_the_standard_triple_is_the_basepoint():
    p = project_pd(sigma0(3), xi(1.0), sigma_inf(3))
    assert p.m == pytest.approx(np.eye(3), abs=1e-10)


def test_project_pd_is_equivariant(rng):
    triple = (xi(-2.0), xi(0.3), xi(1.5))
    p = project_pd(*triple)
    for _ in range(3):
        g = random_sl(3, rng)
        moved = project_pd(*(f.act(g) for f in triple))
        assert distance(moved, p.act(g)) == pytest.approx(0.0, abs=1e-7)


def test_principal_basepoint():
    o = flat_basepoint(3, "principal")
    assert np.diag(o) == pytest.approx([0.5, 1.0, 2.0])
    assert np.linalg.det(o) == pytest.approx(1.0)
    assert flat_basepoint(2, "principal") == pytest.approx(np.eye(2))
    with pytest.raises(DomainError):
        flat_basepoint(3, "other")


def test_principal_image_is_a_homomorphism(rng):
    for d in (2, 3, 4):
        a = random_sl(2, rng)
        b = random_sl(2, rng)
        assert principal_image(a @ b, d) == pytest.approx(principal_image(a, d) @ principal_image(b, d), abs=1e-9)
        t = 0.7
        unit = principal_image(np.array([[1.0, t], [0.0, 1.0]]), d)
        assert unit == pytest.approx(Unipotent.from_superdiagonal([t] * (d - 1)).n, abs=1e-12)


@pytest.mark.parametrize("s", [-2.0, -0.3, 0.5, 4.0])
def test_cross_ratio_in_dimension_two_is_classical(s):
    q = standard_position(xi(s, 2), sigma0(2), xi(1.0, 2), sigma_inf(2))
    assert cross_ratio_i(q, 1) == pytest.approx(s, rel=1e-10)
    assert cross_ratio_i(q, 1) == pytest.approx(cross_ratio((s, 0.0, 1.0, INF)), rel=1e-10)


def test_veronese_quadruple_cross_ratios(rng):
    flags = [xi(-1.0), xi(0.0), xi(1.0), sigma_inf(3)]
    q = standard_position(*flags)
    for i in (1, 2):
        assert cross_ratio_i(q, i) == pytest.approx(-1.0, abs=1e-10)
        assert log_cross_ratio_i(q, i) == pytest.approx(0.0, abs=1e-10)
    g = random_sl(3, rng)
    moved = standard_position(*(f.act(g) for f in flags))
    assert cross_ratio_i(moved, 1) == pytest.approx(-1.0, abs=1e-8)
    with pytest.raises(DomainError):
        cross_ratio_i(q, 3)


def test_quadruple_positivity():
    ok, witness = quadruple_positive([xi(-1.0), xi(0.0), xi(1.0), sigma_inf(3)])
    assert ok and witness is None
    ok, witness = quadruple_positive([xi(2.0), sigma0(3), xi(1.0), sigma_inf(3)])
    assert not ok
    assert witness["factor"] == "m_inv"
    with pytest.raises(DomainError):
        quadruple_positive([sigma0(3), sigma_inf(3)])


@pytest.mark.slow
def test_busemann_sum_is_proper(rng):
    flags = [sigma0(3), xi(1.0), sigma_inf(3)]
    centre = busemann_sum_minimizer(flags)
    base = positive_triple_busemann_sum(flags, centre)
    assert base <= positive_triple_busemann_sum(flags, SpdPoint.identity(3)) + 1e-8
    profile = properness_profile(flags, [1.0, 4.0], 6, rng, centre)
    assert np.all(profile[:, 1] > profile[:, 0])
    assert np.all(profile[:, 1] > base)
