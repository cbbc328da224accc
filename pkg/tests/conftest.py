import pytest
from hypothesis import strategies as st
from fractions import Fraction

from qseries.gaussrat import GaussRat
from qseries.series import XSeries

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


small_rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
gauss = st.builds(GaussRat, small_rationals, st.one_of(st.just(0), small_rationals))
nonzero_gauss = gauss.filter(bool)


@st.composite
def series(draw, order=40, low=-3, unit=False, size=12):
    """Random sparse Laurent series with Gaussian-rational coefficients."""
    coeffs = draw(st.dictionaries(st.integers(low, order - 1), gauss, max_size=size))
    if unit:
        lead = draw(st.integers(low, 3))
        coeffs = {e: c for e, c in coeffs.items() if e > lead}
        coeffs[lead] = draw(nonzero_gauss)
    return XSeries(coeffs, order)


@pytest.fixture
def q():
    return XSeries({2: 1}, 41)
