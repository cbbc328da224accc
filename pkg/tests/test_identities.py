from fractions import Fraction

import pytest
import sympy

from oracles import expand, q, sym_pochhammer
from qseries import identities
from qseries.errors import DomainError, InsufficientOrder
from qseries.identities import (
    A_DIRECT_VS_CLOSED,
    DIFF3_CHAIN,
    DIFF4,
    DIFF4_REINDEX,
    DIFF4_SPLIT,
    FAIL,
    PASS,
    THM11,
    THM12,
    THM13,
    MONOMIAL_GRID,
    Z_GRID,
    aftall,
    alladi,
    build_side,
    correction_series,
    default_registry,
    half_product,
    jacobi_series,
    qbinomial,
    thm12_difference,
    verify,
    verify_all,
    verify_thm12,
)
from qseries.qtoolkit import QMonomial
from qseries.series import XSeries, divisibility_report, equal_up_to, xorder

ONE, MINUS_ONE = QMonomial(1), QMonomial(-1)


def sym_half_product(n_factors):
    return sym_pochhammer(q, q**2, n_factors) / sym_pochhammer(-q, q**2, n_factors) / 2


def sym_jacobi(N):
    """Summands of the little q-Jacobi double series with outer index n <= N."""
    terms = []
    for n in range(N + 1):
        w = sym_pochhammer(q, q**2, n) * (-q) ** n / (sym_pochhammer(-q, q**2, n) * (1 + q ** (2 * n)))
        terms += [w * sym_pochhammer(-1, q, j) / sym_pochhammer(q, q, j) * (-q) ** j
                  for j in range(2 * n + 1)]
    return terms


def sym_correction(N):
    terms = []
    for n in range(N + 1):
        w = sym_pochhammer(q**3, q**2, n) * (-q) ** n / (sym_pochhammer(-q**3, q**2, n) * (1 + q ** (2 * n + 2)))
        terms += [4 * q**2 / (1 + q) * w * sym_pochhammer(-q, q, 2 * j) * q ** (2 * j)
                  / sym_pochhammer(q**2, q, 2 * j) for j in range(n + 1)]
    return terms


# -- examples from the oracle ---------------------------------------------------


def test_thm13_difference_low_order():
    # sympy: outer terms n >= 2 start at q^4
    expected = expand(sym_correction(1), 3)
    assert expected == XSeries({4: 4, 6: -8}, 7)
    assert equal_up_to(correction_series(3), expected, 3) is None
    rhs = build_side(THM13, "rhs", 3)
    diff = rhs - half_product(3)
    assert diff.coeff_q(2) == 4
    assert diff == expected


def test_jacobi_series_matches_sympy():
    N = 6
    got = jacobi_series(N)
    assert equal_up_to(got, expand(sym_jacobi(N), N), N) is None
    assert equal_up_to(correction_series(N), expand(sym_correction(N), N), N) is None
    assert equal_up_to(half_product(N), expand(sym_half_product(N), N), N) is None


def test_a_direct_vs_closed_rhs():
    assert build_side(A_DIRECT_VS_CLOSED, "rhs", 2) == XSeries({0: Fraction(1, 2), 2: -1, 4: 1}, 5)


@pytest.mark.parametrize("a", MONOMIAL_GRID)
def test_alladi_n0_is_one(a):
    for order in (0, 3, 9):
        assert build_side(alladi(a, ONE, 0), "lhs", order) == XSeries({0: 1}, xorder(order))


def test_aftall_hand_check():
    # (1-q)(1-q^2) + 2q(1-q^2) + 2q^2(1+q) = (1+q)(1+q^2)
    assert sympy.expand((1 - q) * (1 - q**2) + 2 * q * (1 - q**2) + 2 * q**2 * (1 + q)
                        - (1 + q) * (1 + q**2)) == 0
    assert verify(aftall(1), 30).status == PASS


def test_alladi_specialization():
    for n in range(21):
        assert verify(alladi(MINUS_ONE, ONE, n), 30).status == PASS


def test_qbinomial_euler():
    r = verify(qbinomial(QMonomial(0), QMonomial.q(1)), 40)
    assert r.status == PASS


@pytest.mark.parametrize("a", MONOMIAL_GRID)
@pytest.mark.parametrize("z", Z_GRID)
def test_qbinomial_grid(a, z):
    assert verify(qbinomial(a, z), 25).passed


def test_thm12_examples():
    r2 = verify_thm12(2)
    assert r2.status == PASS
    assert thm12_difference(2).coeff_q(2) == 4
    r0 = verify_thm12(0)
    assert r0.status == PASS and thm12_difference(0).coeff(0) == 0
    assert verify_thm12(100).status == PASS


# -- structural properties -----------------------------------------------------


@pytest.mark.parametrize("ident", [THM11, THM13, A_DIRECT_VS_CLOSED, DIFF3_CHAIN, DIFF4,
                                   DIFF4_SPLIT, DIFF4_REINDEX, aftall(5),
                                   alladi(QMonomial.q(1), MINUS_ONE, 4)])
def test_pass_is_monotone_in_order(ident):
    for order in (0, 1, 5, 17, 30):
        assert verify(ident, order).passed


def test_thm13_implies_thm12():
    order = 60
    assert verify(THM13, order).passed
    assert divisibility_report(correction_series(order), 4, order).passed
    assert verify(THM12, order).passed


def test_chain_pieces_combine():
    order = 40
    for ident in (DIFF3_CHAIN, DIFF4, DIFF4_SPLIT, DIFF4_REINDEX, A_DIRECT_VS_CLOSED):
        assert verify(ident, order).passed, ident
    # thm13 = a_direct_vs_closed + diff4 once the chain is granted
    left = build_side(THM13, "lhs", order)
    right = build_side(A_DIRECT_VS_CLOSED, "rhs", order) + build_side(DIFF4, "rhs", order)
    assert equal_up_to(left, right, order) is None


def test_thm11_sides_real_even_integral():
    rhs = build_side(THM11, "rhs", 30)
    assert rhs.coeff(0) == 0 and rhs.is_real() and rhs.is_even()
    assert [rhs.coeff_q(n) for n in (1, 2, 3)] == [1, 2, 4]
    assert verify(THM11, 30).passed


# -- errors and harness --------------------------------------------------------


def test_constructor_validation():
    with pytest.raises(DomainError):
        aftall(-1)
    with pytest.raises(DomainError):
        qbinomial(QMonomial(0), QMonomial(1))
    with pytest.raises(InsufficientOrder):
        build_side(THM13, "lhs", -1)
    with pytest.raises(DomainError):
        build_side(THM12, "lhs", 3)


def test_identity_id_text():
    assert str(alladi(-1, 1, 3)) == "alladi(a=-1,b=1,n=3)"
    assert str(THM13) == "thm13"


def test_verify_all_trivial_and_default():
    assert all(r.passed for r in verify_all(0))
    reports = verify_all(50)
    assert len(reports) == len(default_registry())
    assert all(r.status == PASS for r in reports)


def test_sign_flip_is_caught(monkeypatch):
    lhs, rhs = identities.BUILDERS["a_direct_vs_closed"]
    monkeypatch.setitem(identities.BUILDERS, "a_direct_vs_closed",
                        (lhs, lambda order_q: -rhs(order_q)))
    reports = verify_all(10)
    failed = [r for r in reports if r.status != PASS]
    assert len(failed) == 1
    [bad] = failed
    assert bad.id == A_DIRECT_VS_CLOSED and bad.status == FAIL
    assert bad.mismatch.exponent == 0
    assert (bad.mismatch.lhs, bad.mismatch.rhs) == (Fraction(1, 2), Fraction(-1, 2))
