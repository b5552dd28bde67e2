"""Acceptance criteria, one test group per criterion.

Every group records its outcome in ``RESULTS``; ``conftest.py`` prints one
pass/fail line per criterion at the end of the session.
"""

import io
import json
import time
from collections import defaultdict
from contextlib import contextmanager
from fractions import Fraction

import pytest

from qrs import dressed, qsl, rmat, rs, twist
from qrs.cli import run
from qrs.diffop import evaluate
from qrs.scalars import ScalarPoint, derive_seed, sample_point

TITLES = {
    1: "relations in fundamental and symmetric reps, n in {2,3,4}, l in {1,2}, < 10 s each",
    2: "root-vector k-independence (fundamental n <= 5, symmetric n <= 4, l <= 2)",
    3: "YBE for K Rhat on V(x)V(x)V, n in {2,3}, 10 points; fails without K",
    4: "ordered product equals both closed forms, n <= 4, l <= 2, 5 points",
    5: "star reductions on all increasing chains and e*f* v0 scalars, n <= 4, l <= 2",
    6: "twist equations and scalar recursions, n in {2,3,4}, l in {1,2}, 10 points; Phi_12 = 3/22",
    7: "dressed diagonal sum = product, n <= 5, l <= 2, 10 points; anchor -47/88",
    8: "gauge identity f H f^-1 = Hhat under exactly one convention, n in {2,3}, l in {1,2}, < 60 s",
    9: "n = 2 Hamiltonian has the two-term difference Lame shape",
    10: "classical limit of [l][l+1] xi, l in {1,2}, y in {1,2,3}",
    11: "Hhat keeps degree <= 3 symmetric functions symmetric and pole-free, n in {2,3}, l = 1",
    12: "verify all --n 3 --l 2 under 5 minutes and byte-deterministic",
}

RESULTS: dict[int, list[bool]] = defaultdict(list)

TRIALS = 10


@contextmanager
def criterion(num):
    ok = False
    try:
        yield
        ok = True
    finally:
        RESULTS[num].append(ok)


def pts(label, n, l, count):
    return [sample_point(n, l, derive_seed(0, f"{label}:{n}:{l}:{k}")) for k in range(count)]


ANCHOR = ScalarPoint(2, 1, 2, (1, 3))
NL = [(n, l) for n in (2, 3, 4) for l in (1, 2)]


@pytest.mark.parametrize("n,l", NL)
def test_c1_relations(n, l):
    with criterion(1):
        t0 = time.perf_counter()
        for pt in pts("c1", n, l, 3):
            for rep in (qsl.fundamental_rep(n, pt), qsl.symmetric_rep(n, l, pt)):
                rpt = qsl.check_relations(rep)
                assert rpt.passed, rpt.failures()
        assert time.perf_counter() - t0 < 10


def test_c2_k_independence():
    with criterion(2):
        for n in (3, 4, 5):
            for pt in pts("c2f", n, 1, 3):
                assert qsl.check_k_independence(qsl.fundamental_rep(n, pt)).passed
        for n in (3, 4):
            for l in (1, 2):
                for pt in pts("c2s", n, l, 3):
                    assert qsl.check_k_independence(qsl.symmetric_rep(n, l, pt)).passed


@pytest.mark.parametrize("n", [2, 3])
def test_c3_ybe(n):
    with criterion(3):
        for pt in pts("c3", n, 1, TRIALS):
            assert rmat.check_ybe(n, pt).passed
            assert not rmat.check_ybe(n, pt, with_K=False).passed


@pytest.mark.parametrize("n,l", NL)
def test_c4_closed_forms(n, l):
    with criterion(4):
        for pt in pts("c4", n, l, 5):
            fund, sym = qsl.fundamental_rep(n, pt), qsl.symmetric_rep(n, l, pt)
            assert rmat.rhat(fund, sym, pt).op == rmat.closed_first(sym, pt).op
            assert rmat.rhat(sym, fund, pt).op == rmat.closed_second(sym, pt).op


@pytest.mark.parametrize("n,l", NL)
def test_c5_star_reductions(n, l):
    with criterion(5):
        for pt in pts("c5", n, l, 3):
            sym = qsl.symmetric_rep(n, l, pt)
            for chain in qsl.increasing_chains(n):
                assert qsl.check_star_reduction(sym, chain).passed, chain
            assert qsl.check_ef(sym).passed


@pytest.mark.parametrize("n,l", NL)
def test_c6_twist(n, l):
    with criterion(6):
        for pt in pts("c6", n, l, TRIALS):
            sym = qsl.symmetric_rep(n, l, pt)
            coeffs = twist.TwistCoeffs(pt)
            f12 = twist.check_F12_equation(n, l, pt, coeffs, sym)
            f21 = twist.check_F21_equation(n, l, pt, coeffs, sym)
            assert f12.passed, f12.failures()
            assert f21.passed, f21.failures()
            for i, j in rmat.positive_roots(n):
                assert twist.phi_equation_residual(i, j, coeffs) == 0
                assert twist.psi_equation_residual(i, j, coeffs) == 0


def test_c6_anchor():
    with criterion(6):
        assert twist.phi(1, 2, ANCHOR) == Fraction(3, 22)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_c7_sum_product(n):
    with criterion(7):
        for l in (1, 2):
            for pt in pts("c7", n, l, TRIALS):
                rpt = dressed.check_sum_product(n, l, pt)
                assert rpt.passed, rpt.failures()


def test_c7_anchor():
    with criterion(7):
        sum_route = dressed.dressed_diagonal(2, 1, ANCHOR).rjj[2]
        product_route = dressed.coupling_product(2, 1, ANCHOR)
        assert sum_route == product_route == Fraction(-47, 88)


@pytest.mark.parametrize("n,l", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_c8_gauge(n, l):
    with criterion(8):
        t0 = time.perf_counter()
        rpt = rs.check_gauge(n, l, trials=TRIALS, seed=0)
        assert len(rpt.passing) == 1, rpt.passing
        assert rpt.passing == [("coeff-left", "shift-left")]
        assert time.perf_counter() - t0 < 60


def test_c9_lame_shape():
    with criterion(9):
        for l in (1, 2, 3):
            H = rs.difference_lame_n2(l, "coeff-left")
            assert H.support() == {(1, 0), (0, 1)}
            for pt in pts("c9", 2, l, 5):
                assert evaluate(H.coeff((1, 0)), pt) == 1
                expected = 1 - dressed.coupling(pt) * dressed.xi(pt.ratio(2, 1), pt)
                assert evaluate(H.coeff((0, 1)), pt) == expected
        assert evaluate(rs.difference_lame_n2(1, "coeff-left").coeff((0, 1)), ANCHOR) == Fraction(-47, 88)


def test_c10_classical_limit():
    with criterion(10):
        eps = [Fraction(1, 10 ** k) for k in (2, 3, 4)]
        for l in (1, 2):
            for y in (1, 2, 3):
                rpt = rs.classical_limit_check(l, y, eps, max_ratio_growth=10)
                assert rpt.passed, rpt.failures()
                assert rpt["error/eps bounded"].note == f"limit {Fraction(4 * l * (l + 1), y * (y + 2))}"


@pytest.mark.parametrize("n", [2, 3])
def test_c11_symmetry_preservation(n):
    with criterion(11):
        for lam in rs.symmetric_exponents(n, max_degree=3):
            rpt = rs.check_symmetry_preservation(n, 1, lam, trials=20, seed=0)
            assert rpt.passed, (lam, rpt.failures())


def test_c12_end_to_end():
    with criterion(12):
        argv = ["verify", "all", "--n", "3", "--l", "2"]
        outputs = []
        t0 = time.perf_counter()
        for _ in range(2):
            buf = io.StringIO()
            assert run(argv, stdout=buf, stderr=io.StringIO()) == 0
            outputs.append(buf.getvalue())
        assert (time.perf_counter() - t0) / 2 < 300
        assert outputs[0] == outputs[1]
        assert json.loads(outputs[0])["pass"]
