from fractions import Fraction

import pytest

from qrs.linop import LinOp
from qrs.qsl import fundamental_rep, root_vector, star_vector, symmetric_rep
from qrs.rmat import positive_roots
from qrs.scalars import ScalarPoint, SingularPoint, qint, sample_point
from qrs.twist import (
    TwistCoeffs,
    adB_conjugate,
    adB_tensor,
    b_diagonal,
    build_F12,
    build_F21_inv,
    check_F12_equation,
    check_F21_equation,
    conjugate_root_by_rule,
    phi,
    phi_equation_residual,
    psi,
    psi_equation_residual,
    q_l,
    root_coordinates,
)


def test_anchor_values(anchor):
    assert phi(1, 2, anchor) == Fraction(3, 22)
    assert psi(1, 2, anchor) == Fraction(-3, 4)


def test_base_case_ignores_n():
    pt = sample_point(4, 1, 3)
    q = pt.q
    for i in range(1, 4):
        assert phi(i, i + 1, pt) == (q - 1 / q) / (q ** 2 * pt.ratio(i + 1, i) - 1)
        assert psi(i, i + 1, pt) == (q - 1 / q) / (1 - pt.ratio(i + 1, i))


def test_phi_one_recursion_step():
    pt = sample_point(3, 1, 8)
    q = pt.q
    ql = (q ** 2 + 1) / q ** 2  # [2] q^-1 at l = 1
    assert q_l(pt) == ql
    phi23 = (q - 1 / q) / (q ** 2 * pt.ratio(3, 2) - 1)
    expected = phi23 / ql * (q ** 2 * pt.ratio(3, 2) - q ** -2) / (q ** 2 * pt.ratio(3, 1) - 1)
    assert phi(1, 3, pt) == expected


def test_psi_one_recursion_step():
    pt = sample_point(3, 2, 8)
    q = pt.q
    psi23 = (q - 1 / q) / (1 - pt.ratio(3, 2))
    expected = q ** -2 / qint(2, pt) * (pt.ratio(3, 2) - q ** 4) / (pt.ratio(3, 1) - 1) * psi23
    assert psi(1, 3, pt) == expected


def test_singular_denominator_raises():
    pt = ScalarPoint(2, 1, 2, (1, 1))
    with pytest.raises(SingularPoint):
        psi(1, 2, pt)
    with pytest.raises(IndexError):
        TwistCoeffs(pt).Phi(2, 1)


@pytest.mark.parametrize("n,l", [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2)])
def test_scalar_residuals_vanish(n, l):
    for k in range(4):
        tc = TwistCoeffs(sample_point(n, l, 50 + k)).fill()
        for i, j in positive_roots(n):
            assert phi_equation_residual(i, j, tc) == 0
            assert psi_equation_residual(i, j, tc) == 0


def test_other_phi_exponent_leaves_a_residual():
    # a leading power q_l^(i-j-1) in place of q_l^(i-j+1) leaves a residual
    pt = sample_point(3, 1, 2)
    tc = TwistCoeffs(pt)
    q, ql = pt.q, q_l(pt)
    lhs = tc.Phi(1, 2) * (q ** 2 * pt.ratio(2, 1) - 1)
    assert lhs == q - 1 / q
    assert lhs != ql ** -2 * (q - 1 / q)


def test_build_F12_shape():
    pt = sample_point(2, 1, 1)
    sym = symmetric_rep(2, 1, pt)
    F = build_F12(2, 1, pt, sym=sym).op
    expected = LinOp.identity(2 * sym.dim) + LinOp.unit(2, 0, 1).kron(sym.gen("f", 1)).scale(phi(1, 2, pt))
    assert F == expected

    class Zero:
        def Phi(self, i, j):
            return Fraction(0)

        Psi = Phi

    assert build_F12(3, 1, sample_point(3, 1, 1), Zero()).op == LinOp.identity(3 * 10)
    assert build_F21_inv(3, 1, sample_point(3, 1, 1), Zero()).op == LinOp.identity(3 * 10)


def test_build_F12_term_count():
    pt = sample_point(3, 1, 1)
    F = build_F12(3, 1, pt).op - LinOp.identity(30)
    sym = symmetric_rep(3, 1, pt)
    # each root contributes one block E_ij (x) Phi_ij f*_ij
    blocks = {(r // sym.dim, c // sym.dim) for (r, c), _ in F.entries()}
    assert blocks == {(0, 1), (0, 2), (1, 2)}


def test_root_coordinates():
    assert root_coordinates(3, (2, -1)) == [1, 0]
    assert root_coordinates(3, (1, 1)) == [1, 1]
    assert root_coordinates(2, (1,)) == [Fraction(1, 2)]


def test_adB_two_paths_agree():
    pt = sample_point(3, 2, 4)
    sym = symmetric_rep(3, 2, pt)
    for i, j in positive_roots(3):
        fij = root_vector(sym, "f", i, j)
        assert adB_conjugate(fij, sym, pt) == conjugate_root_by_rule(sym, i, j, pt)
    # f*_13 = f_2 f_1, conjugated factorwise
    fstar = star_vector(sym, "f", 1, 3)
    by_rule = conjugate_root_by_rule(sym, 2, 3, pt) @ conjugate_root_by_rule(sym, 1, 2, pt)
    assert adB_conjugate(fstar, sym, pt) == by_rule


def test_adB_fixes_cartan_and_round_trips():
    pt = sample_point(3, 1, 4)
    sym = symmetric_rep(3, 1, pt)
    h = sym.gen("h", 1)
    assert adB_conjugate(h, sym, pt) == h
    e = sym.gen("e", 2)
    assert adB_conjugate(adB_conjugate(e, sym, pt), sym, pt, inverse=True) == e
    B, Binv = b_diagonal(sym, pt), b_diagonal(sym, pt, inverse=True)
    assert B @ Binv == sym.identity()
    assert adB_conjugate(e, sym, pt) == B @ e @ Binv
    with pytest.raises(ValueError):
        adB_conjugate(sym.gen("e", 1) + sym.gen("f", 1), sym, pt)


def test_adB_tensor_matches_leg_conjugation():
    pt = sample_point(3, 1, 6)
    sym = symmetric_rep(3, 1, pt)
    fund = fundamental_rep(3, pt)
    X = LinOp.unit(3, 0, 2).kron(star_vector(sym, "f", 1, 3))
    B2 = LinOp.identity(3).kron(b_diagonal(sym, pt))
    B2inv = LinOp.identity(3).kron(b_diagonal(sym, pt, inverse=True))
    assert adB_tensor(X, fund, sym, pt, "sym") == B2 @ X @ B2inv
    B1 = b_diagonal(fund, pt).kron(LinOp.identity(sym.dim))
    B1inv = b_diagonal(fund, pt, inverse=True).kron(LinOp.identity(sym.dim))
    assert adB_tensor(X, fund, sym, pt, "fund") == B1 @ X @ B1inv


@pytest.mark.parametrize("n,l", [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1), (4, 2)])
def test_twist_equations(n, l):
    for k in range(3):
        pt = sample_point(n, l, 60 + k)
        assert check_F12_equation(n, l, pt).passed
        assert check_F21_equation(n, l, pt).passed
        assert check_F21_equation(n, l, pt, reduced=True).passed


def test_F12_negative_control_localizes():
    pt = sample_point(3, 1, 9)
    tc = TwistCoeffs(pt).fill()
    tc.phi[(1, 3)] = -tc.phi[(1, 3)]
    rpt = check_F12_equation(3, 1, pt, tc)
    names = {c.name for c in rpt.failures()}
    assert names and all("(1,3)" in nm for nm in names)


def test_F21_negative_control_localizes():
    pt = sample_point(3, 2, 9)
    tc = TwistCoeffs(pt).fill()
    tc.psi[(2, 3)] = 2 * tc.psi[(2, 3)]
    rpt = check_F21_equation(3, 2, pt, tc)
    names = {c.name for c in rpt.failures()}
    assert "operator (2,3)" in names and "operator (1,2)" not in names
