"""Sanity checks on the sympy reference expansion used by other tests."""

from fractions import Fraction

from oracles import expand, q, x
from qseries.series import XSeries


def test_geometric():
    assert expand(1 / (1 + q), 3) == XSeries({0: 1, 2: -1, 4: 1, 6: -1}, 7)


def test_laurent_and_half_powers():
    assert expand((1 + x) / x**2, 1) == XSeries({-2: 1, -1: 1}, 3)
    assert expand(1 / (2 - x), 1) == XSeries({0: Fraction(1, 2), 1: Fraction(1, 4), 2: Fraction(1, 8)}, 3)
