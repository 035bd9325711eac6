from fractions import Fraction

import pytest

from nodalhodge import (EulerPolynomial, Polynomial, QQ, adjoint_rank_report,
                        adjoint_space_dim, euler_blowup,
                        euler_nodal_threefold, euler_of_Pn, euler_product,
                        euler_resolution, euler_sum, mhs_dims,
                        modular_adjoint_report, monomial_count, node_bound,
                        pole_adjoint_threshold, power_sum,
                        smooth_hodge_numbers)


def test_smooth_diamonds_low_degrees():
    assert smooth_hodge_numbers(2).as_tuple() == (0, 0, 0, 0)
    assert smooth_hodge_numbers(3).as_tuple() == (0, 5, 5, 0)
    assert smooth_hodge_numbers(4).as_tuple() == (0, 30, 30, 0)
    assert smooth_hodge_numbers(5).as_tuple() == (1, 101, 101, 1)


def test_smooth_diamond_validation():
    with pytest.raises(ValueError):
        smooth_hodge_numbers(1)
    with pytest.raises(ValueError):
        smooth_hodge_numbers(5, n=2)


def test_node_bound_and_threshold_table():
    assert node_bound(5) == 101
    assert [pole_adjoint_threshold(n) for n in range(2, 9)] == \
        [1, 3, 5, 7, 9, 11, 13]
    with pytest.raises(ValueError):
        pole_adjoint_threshold(1)


# ---- adjoint conditions ---------------------------------------------------


def _one_node_quintic():
    """x4^3 (x0 x1 - x2 x3) + x0^5 + x1^5 + x2^5 + x3^5, node at e4."""
    x = [Polynomial.variable(i, 5) for i in range(5)]
    q = x[0] * x[1] - x[2] * x[3]
    return x[4] ** 3 * q + x[0] ** 5 + x[1] ** 5 + x[2] ** 5 + x[3] ** 5


E4 = (Fraction(0), Fraction(0), Fraction(0), Fraction(0), Fraction(1))


def test_adjoint_single_node_rank_one():
    f = _one_node_quintic()
    dim = adjoint_space_dim(f, [E4], 2, 1)
    assert dim == monomial_count(5, 5) - 1 == 125
    rep = adjoint_rank_report(f, [E4], 2, 1)
    assert rep["rank"] == 1 and rep["cols"] == 126 and rep["rows"] == 1


def test_adjoint_rejects_nonsingular_point():
    f = _one_node_quintic()
    smooth_pt = (Fraction(1), Fraction(-1), Fraction(0), Fraction(0),
                 Fraction(0))
    assert f.evaluate(smooth_pt) == 0
    with pytest.raises(ValueError):
        adjoint_space_dim(f, [smooth_pt], 2, 1)


def test_adjoint_empty_sigma_full_space():
    f = power_sum(5, 5)
    assert adjoint_space_dim(f, [], 2, 1) == 126


def test_adjoint_order_two_more_conditions():
    f = _one_node_quintic()
    d1 = adjoint_space_dim(f, [E4], 2, 1)
    d2 = adjoint_space_dim(f, [E4], 2, 2)
    # order 2 imposes the point plus its 4 chart partials
    assert d1 - d2 == 4


def test_modular_adjoint_report_single_node():
    f = _one_node_quintic()
    rep = modular_adjoint_report(f, 2, 1, primes=(2147483647, 2147483629),
                                 seed=3)
    assert rep["agreement"]
    assert rep["cols"] == 126
    assert rep["kernel_dim"] == 126 - rep["rank"]


# ---- Euler polynomials -----------------------------------------------------


def test_euler_pn_and_products():
    p1 = euler_of_Pn(1)
    assert p1.coeffs == {(0, 0): 1, (1, 1): 1}
    sq = euler_product(p1, p1)
    assert sq.coeffs == {(0, 0): 1, (1, 1): 2, (2, 2): 1}
    with pytest.raises(ValueError):
        euler_of_Pn(-1)


def test_euler_sum_and_scalar():
    pt = EulerPolynomial.constant(1)
    assert euler_sum([pt] * 7).coefficient(0, 0) == 7
    assert (pt * 7).coefficient(0, 0) == 7


def test_euler_blowup_points_on_p4():
    for m in (1, 100):
        e = euler_blowup(euler_of_Pn(4), EulerPolynomial.constant(m), 3)
        for k in (1, 2, 3):
            assert e.coefficient(k, k) == m + 1
        assert e.coefficient(0, 0) == m + 1 - m  # points collapse back
        assert e.coefficient(4, 4) == 1
    with pytest.raises(ValueError):
        euler_blowup(euler_of_Pn(4), EulerPolynomial.constant(1), 0)


def test_euler_nodal_vs_resolution_identity():
    for m in (0, 1, 50, 100, 101):
        a, b = 1, 101
        res = euler_resolution(m, a, b)
        nod = euler_nodal_threefold(m, a, b)
        band = EulerPolynomial({(0, 0): m, (1, 1): 2 * m, (2, 2): m})
        assert res - band + EulerPolynomial.constant(m) == nod


def test_euler_nodal_rejects_overflow():
    with pytest.raises(ValueError):
        euler_nodal_threefold(102, 1, 101)
    with pytest.raises(ValueError):
        euler_resolution(102, 1, 101)


def test_euler_symmetry():
    assert euler_nodal_threefold(100, 1, 101).is_symmetric()
    assert euler_resolution(100, 1, 101).is_symmetric()
    assert not EulerPolynomial({(1, 0): 1}).is_symmetric()


def test_euler_numeric_checks_quintic():
    # topological Euler number of the smooth quintic threefold is -200
    e = euler_nodal_threefold(0, 1, 101)
    chi = sum(c * (-1) ** (p + q) for (p, q), c in e.coeffs.items())
    assert chi == -200
    even = e.coefficient(0, 0) + e.coefficient(1, 1) + \
        e.coefficient(2, 2) + e.coefficient(3, 3)
    odd = e.coefficient(3, 0) + e.coefficient(2, 1) + \
        e.coefficient(1, 2) + e.coefficient(0, 3)
    assert even - odd == -200


# ---- mixed Hodge structure bookkeeping -------------------------------------


def test_mhs_dims_hundred_nodes():
    rep = mhs_dims(100, 1, 101, 1)
    assert rep.gr3_types == (1, 1, 1, 1)
    assert rep.h3_resolution == 4
    assert rep.w2_dim == 100
    assert rep.dim_h3 == 104
    assert rep.s_range == (99, 200)
    assert rep.l_range == (0, 101)
    assert rep.e11_W == -99


def test_mhs_json_shape():
    d = mhs_dims(100, 1, 101, 1).to_json_dict()
    assert d["relation"] == "l - s = 1 - m"
    assert d["assumptions"] == {"h2X": 1}
    assert sum(d["gr3_types"]) == 4


def test_mhs_validation():
    with pytest.raises(ValueError):
        mhs_dims(102, 1, 101)
    with pytest.raises(ValueError):
        mhs_dims(10, 1, 101, h2X=0)
