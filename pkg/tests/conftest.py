from fractions import Fraction

import pytest

from qrs.scalars import ParamPoint, ScalarPoint, sample_point


@pytest.fixture
def anchor():
    """q = 2, l = 1, u_2/u_1 = 3."""
    return ScalarPoint(2, 1, Fraction(2), (Fraction(1), Fraction(3)))


def points(n, l, count, seed=0):
    return [sample_point(n, l, seed * 1000 + k) for k in range(count)]


@pytest.fixture
def pt3():
    return ParamPoint(3, 1, Fraction(5, 4), (Fraction(2), Fraction(3, 7), Fraction(9, 5)))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS, TITLES
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(TITLES):
        if num not in RESULTS:
            continue
        mark = "PASS" if all(RESULTS[num]) else "FAIL"
        terminalreporter.write_line(f"[{mark}] criterion {num}: {TITLES[num]}")
