import random
from fractions import Fraction

import pytest

from nodalhodge import (GREVLEX, Polynomial, QQ, QQ_T, RatFun,
                        ci_hilbert_series_coeff, elementary_symmetric,
                        is_homogeneous, monomial_basis, monomial_count,
                        partial_derivatives, power_sum,
                        restrict_to_hyperplane)
from conftest import random_homogeneous, random_poly


def test_construction_drops_zero_terms():
    f = Polynomial(2, QQ, {(1, 0): Fraction(0), (0, 1): Fraction(2)})
    assert len(f.terms) == 1
    assert f.coefficient((0, 1)) == 2
    assert Polynomial.zero(3).is_zero()
    assert Polynomial.zero(3).total_degree() == -1


def test_immutability():
    f = Polynomial.variable(0, 2)
    with pytest.raises(AttributeError):
        f.nvars = 5


def test_arity_mismatch_rejected():
    with pytest.raises(ValueError):
        Polynomial(3, QQ, {(1, 0): Fraction(1)})


def test_ring_axioms_small_sweep():
    rng = random.Random(3)
    for _ in range(60):
        f = random_poly(rng, 3, 3)
        g = random_poly(rng, 3, 3)
        h = random_poly(rng, 3, 3)
        assert (f + g) * h == f * h + g * h
        assert f * g == g * f
        assert f - f == Polynomial.zero(3)


def test_diff_leibniz():
    rng = random.Random(5)
    for _ in range(40):
        f = random_poly(rng, 3, 3, terms=4)
        g = random_poly(rng, 3, 3, terms=4)
        i = rng.randrange(3)
        assert (f * g).diff(i) == f.diff(i) * g + f * g.diff(i)


def test_euler_relation_on_homogeneous():
    rng = random.Random(11)
    for _ in range(40):
        d = rng.randint(1, 5)
        f = random_homogeneous(rng, 4, d)
        lhs = Polynomial.zero(4)
        for i, fi in enumerate(partial_derivatives(f)):
            lhs = lhs + Polynomial.variable(i, 4) * fi
        assert lhs == f * Polynomial.constant(Fraction(d), 4)


def test_leading_data_grevlex():
    f = Polynomial(3, QQ, {(2, 0, 0): Fraction(1), (1, 1, 0): Fraction(3),
                           (0, 0, 2): Fraction(5)})
    assert f.leading_monomial(GREVLEX) == (2, 0, 0)
    assert f.leading_coefficient(GREVLEX) == 1


def test_power_sum_and_elementary():
    assert power_sum(2, 3).to_text() == "x0^2 + x1^2 + x2^2"
    assert elementary_symmetric(2, 3).to_text() == "x0*x1 + x0*x2 + x1*x2"
    assert elementary_symmetric(0, 3) == Polynomial.constant(Fraction(1), 3)
    with pytest.raises(ValueError):
        power_sum(0, 3)
    with pytest.raises(ValueError):
        elementary_symmetric(4, 3)


def test_newton_identity_p2():
    for n in range(2, 6):
        p1 = power_sum(1, n)
        p2 = power_sum(2, n)
        e2 = elementary_symmetric(2, n)
        two = Polynomial.constant(Fraction(2), n)
        assert p2 == p1 * p1 - two * e2


def test_restriction_is_ring_hom():
    rng = random.Random(13)
    for _ in range(30):
        f = random_poly(rng, 4, 3, terms=4)
        g = random_poly(rng, 4, 3, terms=4)
        assert restrict_to_hyperplane(f * g) == \
            restrict_to_hyperplane(f) * restrict_to_hyperplane(g)
        assert restrict_to_hyperplane(f + g) == \
            restrict_to_hyperplane(f) + restrict_to_hyperplane(g)


def test_restriction_preserves_homogeneity():
    f = random_homogeneous(random.Random(17), 5, 5)
    rf = restrict_to_hyperplane(f)
    assert rf.nvars == 4
    assert is_homogeneous(rf)


def test_monomial_basis_count():
    for deg in range(6):
        for nv in range(1, 5):
            basis = monomial_basis(deg, nv)
            assert len(basis) == monomial_count(deg, nv)
            assert len(set(basis)) == len(basis)
            assert all(sum(m) == deg for m in basis)


def test_ci_hilbert_series_quintic_diamond_degrees():
    # degree-k slices of Q[x0..x4]/(five degree-4 forms)
    dims = [ci_hilbert_series_coeff(5, 5, (k + 1) * 5 - 5) for k in range(4)]
    assert dims == [1, 101, 101, 1]
    # vanishes past the socle degree 5(d-2) = 15
    assert ci_hilbert_series_coeff(5, 5, 16) == 0


def test_evaluate_matches_text_semantics():
    f = Polynomial(2, QQ, {(2, 0): Fraction(3), (0, 1): Fraction(-1, 2)})
    assert f.evaluate((Fraction(2), Fraction(4))) == 12 - 2


def test_qqt_coefficients_mix():
    t = RatFun.t()
    f = Polynomial(2, QQ_T, {(1, 0): t, (0, 1): QQ_T.one})
    g = f * f
    assert g.coefficient((2, 0)) == t * t
    assert g.coefficient((1, 1)) == t + t
