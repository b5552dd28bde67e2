from fractions import Fraction

import pytest

from qrs.dressed import (
    check_sum_product,
    coupling,
    dressed_diagonal,
    dressed_diagonal_operator,
    coupling_product,
    xi,
    xi_t,
)
from qrs.scalars import SingularPoint, sample_point


def test_xi_anchor(anchor):
    assert xi(Fraction(3), anchor) == Fraction(27, 44)
    with pytest.raises(SingularPoint):
        xi(Fraction(1), anchor)


def test_xi_half_coordinate_form_agrees():
    for k in range(5):
        pt = sample_point(2, 1, k)
        W = pt.w[1] / pt.w[0]
        assert xi_t(W, pt) == xi(W * W, pt)


def test_bracket_form_of_the_coupling():
    # 1 - [l][l+1] xi(y) = [t + l + 1][t - l] / ([t][t + 1]) with q^t = W
    for l in (1, 2, 3):
        pt = sample_point(2, l, l)
        q, W = pt.q, pt.w[1] / pt.w[0]
        br = lambda a: (W * q ** a - 1 / (W * q ** a)) / (q - 1 / q)
        assert 1 - coupling(pt) * xi(W * W, pt) == br(l + 1) * br(-l) / (br(0) * br(1))


def test_dressed_diagonal_anchor(anchor):
    d = dressed_diagonal(2, 1, anchor)
    assert d.rjj[1] == 1
    assert d.rjj[2] == Fraction(-47, 88)
    assert d.rjj[2] == 1 - coupling(anchor) * xi(Fraction(3), anchor)
    assert coupling_product(2, 1, anchor) == Fraction(-47, 88)
    assert coupling_product(2, 2, anchor) == 1


def test_summand_count():
    d = dressed_diagonal(3, 1, sample_point(3, 1, 0))
    assert sorted(k for k in d.terms if k[1] == 3) == [(1, 3), (2, 3)]
    assert d.rjj[1] == 1


@pytest.mark.parametrize("n,l", [(2, 1), (3, 2), (4, 1), (4, 2), (5, 1), (5, 2)])
def test_sum_product(n, l):
    for k in range(3):
        rpt = check_sum_product(n, l, sample_point(n, l, 70 + k))
        assert rpt.passed, rpt.failures()


def test_sum_product_detects_a_wrong_summand():
    pt = sample_point(3, 1, 2)
    d = dressed_diagonal(3, 1, pt)
    d.reduced[(3, 1)] += 1
    assert not check_sum_product(3, 1, pt, d).passed


@pytest.mark.parametrize("n,l", [(2, 1), (3, 1), (3, 2)])
def test_matrix_route_agrees(n, l):
    pt = sample_point(n, l, 5)
    assert dressed_diagonal_operator(n, l, pt) == dressed_diagonal(n, l, pt).rjj
