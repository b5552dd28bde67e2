from fractions import Fraction

import pytest

from qrs.linop import LinOp, flip
from qrs.qsl import fundamental_rep, root_vector, symmetric_rep
from qrs.rmat import (
    NotNilpotent,
    cartan_K,
    chain_e_sum,
    check_mixed_ybe,
    check_ybe,
    closed_first,
    closed_second,
    inverse_cartan,
    partitions,
    positive_roots,
    qexp,
    r_matrix,
    reduced_r21,
    reduced_r21_coeff,
    rhat,
    weight_pairing,
)
from qrs.scalars import ParamPoint, ScalarPoint, qint, sample_point
from qrs.twist import check_reduced_r21, reduced_r21_unmatched_defects


def test_positive_roots_order():
    assert positive_roots(3) == [(1, 2), (1, 3), (2, 3)]
    assert len(positive_roots(5)) == 10


def test_qexp():
    pt = ScalarPoint(2, 1, 2, (1, 1))
    assert qexp(LinOp.zero(3), pt) == LinOp.identity(3)
    z = LinOp.unit(2, 0, 1).kron(LinOp.unit(2, 1, 0)).scale(Fraction(3, 2))
    assert qexp(z, pt) == LinOp.identity(4) + z
    N = LinOp.unit(3, 0, 1) + LinOp.unit(3, 1, 2)
    assert qexp(N, pt) == LinOp.identity(3) + N + (N @ N).scale(1 / qint(2, pt))
    with pytest.raises(NotNilpotent):
        qexp(LinOp.identity(2), pt)


def test_inverse_cartan():
    assert inverse_cartan(2) == [[Fraction(1, 2)]]
    assert inverse_cartan(3) == [[Fraction(2, 3), Fraction(1, 3)], [Fraction(1, 3), Fraction(2, 3)]]
    assert weight_pairing(3, (1, 0), (0, 1)) == Fraction(1, 3)


def test_cartan_K_values():
    pt = sample_point(2, 1, 0)
    fund = fundamental_rep(2, pt)
    K = cartan_K(fund, fund, pt).op
    # weights +-1; <1,1> = 1/2 and q^(1/2) = tau^n with n = 2
    assert K[0, 0] == pt.tau ** 2 and K[3, 3] == pt.tau ** 2
    assert K[1, 1] == pt.tau ** -2 and K[2, 2] == pt.tau ** -2
    assert K[1, 2] == 0 and K[1, 0] == 0
    sym = symmetric_rep(2, 1, pt)
    K2 = cartan_K(fund, sym, pt).op
    assert all(K2[a * 3 + sym.v0, a * 3 + sym.v0] == 1 for a in range(2))


def test_rhat_n2_closed():
    pt = sample_point(2, 1, 1)
    fund = fundamental_rep(2, pt)
    q = pt.q
    expected = LinOp.identity(4) + LinOp.unit(2, 0, 1).kron(LinOp.unit(2, 1, 0)).scale(q - 1 / q)
    assert rhat(fund, fund, pt).op == expected


def test_rhat_fixes_highest_and_lowest_pairs():
    pt = sample_point(3, 2, 1)
    fund = fundamental_rep(3, pt)
    sym = symmetric_rep(3, 2, pt)
    R = rhat(fund, sym, pt).op
    # e_ij kills the highest vector e_1 of the fundamental, f_ij the lowest x^(0,0,6)
    for b in range(sym.dim):
        v = {0 * sym.dim + b: Fraction(1)}
        assert R.apply(v) == v
    low = sym.index((0, 0, 6))
    for a in range(3):
        v = {a * sym.dim + low: Fraction(1)}
        assert R.apply(v) == v


def test_partitions():
    assert list(partitions(1, 2)) == [(1, 2)]
    assert list(partitions(1, 3)) == [(1, 3), (1, 2, 3)]
    assert len(list(partitions(1, 5))) == 8


def test_chain_sum_n3_instance():
    pt = sample_point(3, 1, 2)
    sym = symmetric_rep(3, 1, pt)
    c = pt.q - 1 / pt.q
    e = lambda i, j: root_vector(sym, "e", i, j)
    assert chain_e_sum(sym, 1, 3, pt) == e(1, 3).scale(c) + (e(2, 3) @ e(1, 2)).scale(c * c)


@pytest.mark.parametrize("n,l", [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2)])
def test_closed_forms(n, l):
    for k in range(2):
        pt = sample_point(n, l, 20 + k)
        fund = fundamental_rep(n, pt)
        sym = symmetric_rep(n, l, pt)
        assert rhat(fund, sym, pt).op == closed_first(sym, pt).op
        assert rhat(sym, fund, pt).op == closed_second(sym, pt).op


def test_increasing_order_breaks_closed_form():
    pt = sample_point(3, 1, 4)
    fund = fundamental_rep(3, pt)
    sym = symmetric_rep(3, 1, pt)
    assert rhat(sym, fund, pt, order="increasing").op != closed_second(sym, pt).op


def test_reduced_r21_coefficients():
    pt = sample_point(3, 1, 0)
    q = pt.q
    assert reduced_r21_coeff(1, 2, pt) == q - 1 / q
    assert reduced_r21_coeff(1, 3, pt) == (q - 1 / q) * q
    pt2 = sample_point(4, 2, 0)
    q = pt2.q
    assert reduced_r21_coeff(1, 4, pt2) == (q - 1 / q) * (q ** 2 / (q + 1 / q)) ** 2


@pytest.mark.parametrize("n,l", [(2, 2), (3, 1), (3, 2), (4, 1)])
def test_reduced_r21_matches_on_matched_components(n, l):
    for k in range(3):
        assert check_reduced_r21(n, l, sample_point(n, l, 30 + k)).passed


def test_reduced_r21_is_exact_for_n2_and_not_beyond():
    pt = sample_point(2, 2, 1)
    assert reduced_r21_unmatched_defects(2, 2, pt) == []
    defects = reduced_r21_unmatched_defects(3, 1, sample_point(3, 1, 1))
    assert defects
    # every defect sits off the matched pattern e_i (x) f*_ij v_0 -> e_j
    assert all(not (a == ij[0] and b == ij[1]) for a, ij, b in defects)


def test_reduced_r21_shape():
    pt = sample_point(3, 1, 2)
    op = reduced_r21(3, 1, pt).op
    sym = symmetric_rep(3, 1, pt)
    # E_ji (x) e*_ij needs e_i in the first leg, so e_3 (x) anything is fixed
    v = {2 * sym.dim + sym.v0: Fraction(1)}
    assert op.apply(v) == v
    out = op.apply({0 * sym.dim + sym.v0: Fraction(1)})
    assert {k // sym.dim for k in out} == {0, 1, 2}


@pytest.mark.parametrize("n,count", [(2, 10), (3, 5)])
def test_ybe(n, count):
    for k in range(count):
        pt = sample_point(n, 1, 40 + k)
        assert check_ybe(n, pt).passed
        assert not check_ybe(n, pt, with_K=False).passed


def test_mixed_ybe_decides_product_order():
    pt = sample_point(3, 1, 3)
    assert check_mixed_ybe(3, 1, pt).passed
    assert not check_mixed_ybe(3, 1, pt, order="increasing").passed
    assert check_mixed_ybe(2, 2, sample_point(2, 2, 3)).passed


def test_r_matrix_is_K_times_rhat():
    pt = sample_point(2, 1, 5)
    fund = fundamental_rep(2, pt)
    R = r_matrix(fund, fund, pt).op
    assert R == cartan_K(fund, fund, pt).op @ rhat(fund, fund, pt).op
    assert flip(R, 2, 2) != R
