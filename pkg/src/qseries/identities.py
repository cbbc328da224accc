"""Both sides of every labeled identity, built as exact truncated series.

Each registry entry maps an identity name to a pair of builders
``(lhs, rhs)``; a builder takes ``order_q`` plus the identity's parameters
and returns a series known through ``q^order_q``.  Infinite sums over ``n``
are cut once the factor carrying ``(-q)^n`` starts beyond the truncation;
every other factor in those sums is a power series, so nothing below the
truncation is lost.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional

from .errors import DomainError, InsufficientOrder, QSeriesError
from .gaussrat import I
from .overpartitions import pbar_omega_series
from .qtoolkit import INF, HypergeoSpec, QMonomial, _loss, phi, qpoch
from .series import (
    Mismatch,
    XSeries,
    div_binomial,
    divide,
    divisibility_report,
    equal_up_to,
    mul,
    mul_binomial,
    one,
    xorder,
    zero,
)

LHS, RHS = "lhs", "rhs"
PASS, FAIL, ERROR = "pass", "fail", "error"


@dataclass(frozen=True)
class IdentityId:
    name: str
    params: tuple = ()  # ((key, value), ...) in a fixed order

    def param(self, key):
        return dict(self.params)[key]

    def params_dict(self) -> dict[str, str]:
        return {k: str(v) for k, v in self.params}

    def __str__(self):
        if not self.params:
            return self.name
        inner = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.name}({inner})"


THM11 = IdentityId("thm11")
THM12 = IdentityId("thm12")
THM13 = IdentityId("thm13")
A_DIRECT_VS_CLOSED = IdentityId("a_direct_vs_closed")
DIFF3_CHAIN = IdentityId("diff3_chain")
DIFF4 = IdentityId("diff4")
DIFF4_SPLIT = IdentityId("diff4_split")
DIFF4_REINDEX = IdentityId("diff4_reindex")


def _monomial(v) -> QMonomial:
    return v if isinstance(v, QMonomial) else QMonomial(v)


def _count(n) -> int:
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise DomainError(f"n must be a nonnegative integer, got {n!r}")
    return n


def alladi(a, b, n: int) -> IdentityId:
    return IdentityId("alladi", (("a", _monomial(a)), ("b", _monomial(b)), ("n", _count(n))))


def aftall(n: int) -> IdentityId:
    return IdentityId("aftall", (("n", _count(n)),))


def qbinomial(a, z) -> IdentityId:
    z = _monomial(z)
    if z.is_zero() or z.xexp <= 0:
        raise DomainError(f"q-binomial argument must start at a positive power, got {z}")
    return IdentityId("qbinomial", (("a", _monomial(a)), ("z", z)))


# -- shared series pieces ------------------------------------------------------


def _outer(T: int, start_xexp: int) -> Iterator[tuple[int, XSeries]]:
    """Yield ``(n, (x^s; q^2)_n (-q)^n / (-x^s; q^2)_n)`` while it starts below ``T``."""
    r = one(T)
    n = 0
    while r.lowexp < T:
        yield n, r
        e = start_xexp + 4 * n
        r = div_binomial(mul_binomial(r, 1, e), -1, e).shift(2).scale(-1)
        n += 1
    # every remaining outer term carries this factor, so it vanishes below T
    assert r.lowexp >= T


def _alladi_terms(T: int, sign: int) -> Iterator[XSeries]:
    """``(-1;q)_j q^j / (q;q)_j * sign^j`` for j = 0, 1, 2, ..."""
    u = one(T)
    j = 0
    while True:
        yield u
        u = div_binomial(mul_binomial(u, -1, 2 * j), 1, 2 * j + 2).shift(2).scale(sign)
        j += 1


def _double_sum(outer: Iterator[tuple[int, XSeries]], inner: Iterator[XSeries],
                count: Callable[[int], int], T: int) -> XSeries:
    """``sum_n w_n * sum_{k < count(n)} inner_k`` with incrementally grown inner sums."""
    total = zero(T)
    partial = zero(T)
    used = 0
    for n, w in outer:
        while used < count(n):
            partial = partial + next(inner)
            used += 1
        total = total + mul(w, partial)
    return total


def _weights_a(T: int) -> Iterator[tuple[int, XSeries]]:
    """``(q;q^2)_n (-q)^n / ((-q;q^2)_n (1 + q^(2n)))``."""
    for n, r in _outer(T, 2):
        yield n, div_binomial(r, -1, 4 * n)


def _weights_b(T: int) -> Iterator[tuple[int, XSeries]]:
    """``(q^3;q^2)_n (-q)^n / ((-q^3;q^2)_n (1 + q^(2n+2)))``."""
    for n, r in _outer(T, 6):
        yield n, div_binomial(r, -1, 4 * n + 4)


def _weighted_alladi(T: int, weight: Callable[[int], int]) -> Iterator[XSeries]:
    for j, u in enumerate(_alladi_terms(T, 1)):
        yield u.scale(weight(j))


def _odd_alladi(T: int) -> Iterator[XSeries]:
    for j, u in enumerate(_alladi_terms(T, 1)):
        if j % 2:
            yield u


def _v_terms(T: int) -> Iterator[XSeries]:
    """``(-q;q)_{2j} q^(2j) / (q^2;q)_{2j}`` for j = 0, 1, 2, ..."""
    v = one(T)
    j = 0
    while True:
        yield v
        v = mul_binomial(mul_binomial(v, -1, 4 * j + 2), -1, 4 * j + 4)
        v = div_binomial(div_binomial(v, 1, 4 * j + 4), 1, 4 * j + 6).shift(4)
        j += 1


def half_product(order_q: int) -> XSeries:
    """``1/2 (q;q^2)_inf / (-q;q^2)_inf``."""
    num = qpoch(QMonomial.q(1), 4, INF, order_q)
    den = qpoch(QMonomial.q(1, -1), 4, INF, order_q)
    return divide(num, den).scale(Fraction(1, 2))


def jacobi_series(order_q: int) -> XSeries:
    """The little q-Jacobi series ``sum_n w_n p_2n(-1; q^(-2n-1), -1 : q)``."""
    T = xorder(order_q)
    return _double_sum(_weights_a(T), _alladi_terms(T, -1), lambda n: 2 * n + 1, T)


def a_series(order_q: int) -> XSeries:
    """``A(q)``: the same double sum without the alternating sign inside."""
    T = xorder(order_q)
    return _double_sum(_weights_a(T), _alladi_terms(T, 1), lambda n: 2 * n + 1, T)


def correction_series(order_q: int) -> XSeries:
    """``4q^2/(1+q) sum_n (q^3;q^2)_n (-q)^n / ((-q^3;q^2)_n (1+q^(2n+2))) sum_{j<=n} v_j``."""
    T = xorder(order_q)
    s = _double_sum(_weights_b(T), _v_terms(T), lambda n: n + 1, T)
    return div_binomial(s.shift(4).scale(4), -1, 2).truncate(T)


def three_phi_two(order_q: int) -> XSeries:
    spec = HypergeoSpec(
        upper=(QMonomial(-1), QMonomial(I, 1), QMonomial(-I, 1)),
        lower=(QMonomial(1, 1), QMonomial(-1, 1)),
        argument=QMonomial.q(1),
    )
    return phi(spec, order_q)


# -- builders ------------------------------------------------------------------


def _thm11_lhs(order_q):
    return pbar_omega_series(order_q)


def _thm11_rhs(order_q):
    q, mq = QMonomial.q(1), QMonomial.q(1, -1)
    num = mul(qpoch(q, 2, INF, order_q), qpoch(q, 4, INF, order_q))
    den = mul(qpoch(mq, 2, INF, order_q), qpoch(mq, 4, INF, order_q))
    first = mul(divide(num, den), three_phi_two(order_q)).scale(Fraction(-1, 2))
    ratio = divide(qpoch(mq, 2, INF, order_q), qpoch(q, 2, INF, order_q))
    return first + mul(ratio, jacobi_series(order_q))


def _thm13_rhs(order_q):
    return half_product(order_q) + correction_series(order_q)


def _diff3_chain_lhs(order_q):
    T = xorder(order_q)
    total = zero(T)
    g = one(T)
    for n, w in _weights_a(T):
        total = total + mul(w, g)
        for e in (4 * n + 2, 4 * n + 4):
            g = div_binomial(mul_binomial(g, -1, e), 1, e)
    return total


def _diff3_chain_rhs(order_q):
    T = xorder(order_q)
    total = one(T).scale(Fraction(1, 2))
    h = div_binomial(one(T).shift(2).scale(-1), 1, 4)
    n = 1
    while h.lowexp < T:
        total = total + h
        h = div_binomial(mul_binomial(h, -1, 4 * n), 1, 4 * n + 4).shift(2).scale(-1)
        n += 1
    return total


def _diff4_lhs(order_q):
    T = xorder(order_q)
    inner = _weighted_alladi(T, lambda j: (-1) ** j - 1)
    return _double_sum(_weights_a(T), inner, lambda n: 2 * n + 1, T)


def _diff4_reindex_rhs(order_q):
    T = xorder(order_q)
    return _double_sum(_weights_a(T), _odd_alladi(T), lambda n: n, T).scale(-2)


def _alladi_lhs(order_q, a, b, n):
    q = QMonomial.q(1)
    return divide(qpoch(a * b * q, 2, n, order_q), qpoch(b * q, 2, n, order_q))


def _alladi_rhs(order_q, a, b, n):
    T = xorder(order_q)
    ab = a * b
    margin = (_loss(ab.xexp + 2, max(0, n - 1), 2) + max(0, -a.xexp) + max(0, -b.xexp))
    total = zero(T + margin)
    t = div_binomial(one(T + margin).shift(2), b.coeff, b.xexp + 2)
    for j in range(1, n + 1):
        total = total + t
        t = mul_binomial(t, ab.coeff, ab.xexp + 2 * j)
        t = div_binomial(t.shift(2), b.coeff, b.xexp + 2 * j + 2)
    total = mul_binomial(total, a.coeff, a.xexp).shift(b.xexp).scale(b.coeff)
    return (total + 1).truncate(T)


def _aftall_lhs(order_q, n):
    T = xorder(order_q)
    total = zero(T)
    for _, u in zip(range(2 * n + 1), _alladi_terms(T, 1)):
        total = total + u
    return total


def _aftall_rhs(order_q, n):
    q = QMonomial.q(1)
    return divide(qpoch(-q, 2, 2 * n, order_q), qpoch(q, 2, 2 * n, order_q))


def _qbinomial_lhs(order_q, a, z):
    return phi(HypergeoSpec((a,), (), z), order_q)


def _qbinomial_rhs(order_q, a, z):
    return divide(qpoch(a * z, 2, INF, order_q), qpoch(z, 2, INF, order_q))


BUILDERS: dict[str, tuple[Callable[..., XSeries], Callable[..., XSeries]]] = {
    "thm11": (_thm11_lhs, _thm11_rhs),
    "thm13": (jacobi_series, _thm13_rhs),
    "a_direct_vs_closed": (a_series, half_product),
    "diff3_chain": (_diff3_chain_lhs, _diff3_chain_rhs),
    "diff4": (_diff4_lhs, correction_series),
    "diff4_split": (lambda order_q: jacobi_series(order_q) - a_series(order_q), _diff4_lhs),
    "diff4_reindex": (_diff4_lhs, _diff4_reindex_rhs),
    "alladi": (_alladi_lhs, _alladi_rhs),
    "aftall": (_aftall_lhs, _aftall_rhs),
    "qbinomial": (_qbinomial_lhs, _qbinomial_rhs),
}


def build_side(id: IdentityId, side: str, order_q: int) -> XSeries:
    """One side of identity ``id``, exact through ``q^order_q``."""
    if order_q < 0:
        raise InsufficientOrder(f"order must be nonnegative, got {order_q}")
    if side not in (LHS, RHS):
        raise ValueError(f"side must be 'lhs' or 'rhs', got {side!r}")
    if id.name == "thm12":
        raise DomainError("thm12 is a congruence; use verify_thm12")
    try:
        lhs, rhs = BUILDERS[id.name]
    except KeyError:
        raise DomainError(f"unknown identity {id.name!r}") from None
    builder = lhs if side == LHS else rhs
    return builder(order_q, **dict(id.params)).truncate(xorder(order_q))


# -- verification --------------------------------------------------------------


@dataclass
class IdentityReport:
    id: IdentityId
    order_q: int
    status: str
    mismatch: Optional[Mismatch] = None
    elapsed: float = field(default=0.0, compare=False)
    detail: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status == PASS


def verify(id: IdentityId, order_q: int) -> IdentityReport:
    """Check that both sides of ``id`` agree through ``q^order_q``."""
    if id.name == "thm12":
        return verify_thm12(order_q)
    start = time.perf_counter()
    try:
        lhs = build_side(id, LHS, order_q)
        rhs = build_side(id, RHS, order_q)
        mismatch = equal_up_to(lhs, rhs, order_q)
    except QSeriesError as exc:
        return IdentityReport(id, order_q, ERROR, elapsed=time.perf_counter() - start,
                              detail=f"{type(exc).__name__}: {exc}")
    status = PASS if mismatch is None else FAIL
    return IdentityReport(id, order_q, status, mismatch, time.perf_counter() - start)


def thm12_difference(order_q: int) -> XSeries:
    """Little q-Jacobi series minus ``1/2 (q;q^2)_inf/(-q;q^2)_inf``."""
    return jacobi_series(order_q) - half_product(order_q)


def verify_thm12(order_q: int) -> IdentityReport:
    """The mod-4 congruence: the difference has integer coefficients divisible by 4.

    Also requires twice the little q-Jacobi series to be integral.
    """
    start = time.perf_counter()
    try:
        lhs = jacobi_series(order_q)
        half = half_product(order_q)
        report = divisibility_report(lhs - half, 4, order_q)
        twice = divisibility_report(lhs.scale(2), 1, order_q)
    except QSeriesError as exc:
        return IdentityReport(THM12, order_q, ERROR, elapsed=time.perf_counter() - start,
                              detail=f"{type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - start
    for what, rep in (("lhs - 1/2 product", report), ("2*lhs", twice)):
        v = rep.violation
        if v is not None:
            mm = Mismatch(v.exponent, lhs.coeff(v.exponent), half.coeff(v.exponent))
            detail = f"{what}: coefficient {v.coefficient} at x^{v.exponent} is {v.kind}"
            return IdentityReport(THM12, order_q, FAIL, mm, elapsed, detail)
    return IdentityReport(THM12, order_q, PASS, None, elapsed)


MONOMIAL_GRID = (
    QMonomial(0),
    QMonomial(1),
    QMonomial(-1),
    QMonomial.q(1),
    QMonomial.q(1, -1),
    QMonomial(I, 1),
)
Z_GRID = (
    QMonomial.q(1),
    QMonomial.q(1, -1),
    QMonomial(1, 1),
    QMonomial(I, 1),
    QMonomial.q(2, Fraction(1, 2)),
)
N_GRID = range(13)


def _alladi_ok(b: QMonomial, n: int) -> bool:
    # (bq;q)_n must not contain the factor 1 - 1
    return not any(b.coeff == 1 and b.xexp + 2 * k == 0 for k in range(1, n + 1))


def default_registry() -> list[IdentityId]:
    ids = [THM11, THM12, THM13, A_DIRECT_VS_CLOSED, DIFF3_CHAIN, DIFF4, DIFF4_SPLIT, DIFF4_REINDEX]
    ids += [aftall(n) for n in N_GRID]
    ids += [alladi(a, b, n) for a in MONOMIAL_GRID for b in MONOMIAL_GRID for n in N_GRID
            if _alladi_ok(b, n)]
    ids += [qbinomial(a, z) for a in MONOMIAL_GRID for z in Z_GRID]
    return ids


def verify_all(order_q: int, ids: Optional[list[IdentityId]] = None) -> list[IdentityReport]:
    """Verify every registry entry; reports come back in registry order."""
    return [verify(i, order_q) for i in (default_registry() if ids is None else ids)]
