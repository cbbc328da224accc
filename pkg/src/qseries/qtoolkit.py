"""q-Pochhammer symbols, basic hypergeometric series and little q-Jacobi polynomials.

Parameters of hypergeometric series are monomials ``c * q^(e/2)``
(:class:`QMonomial`); keeping them exact lets factors like ``1 - q^(-n) q^j``
be formed without losing truncation order and lets upper/lower parameter
pairs cancel by plain equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Union

from .errors import (
    DivisionByZeroTerm,
    DomainError,
    NonTerminatingProduct,
    NonTerminatingSeries,
)
from .gaussrat import GaussRat, format_gauss
from .series import XSeries, div_binomial, mul, mul_binomial, one, xorder

INF = math.inf


@dataclass(frozen=True)
class QMonomial:
    """The exact quantity ``coeff * x^xexp``, i.e. ``coeff * q^(xexp/2)``."""

    coeff: GaussRat
    xexp: int = 0

    def __post_init__(self):
        c = GaussRat.coerce(self.coeff)
        object.__setattr__(self, "coeff", c)
        object.__setattr__(self, "xexp", int(self.xexp) if c else 0)

    @classmethod
    def q(cls, k=1, coeff=1) -> QMonomial:
        """``coeff * q^k``; ``k`` may be a half-integer given as a Fraction."""
        e = Fraction(k) * 2
        if e.denominator != 1:
            raise DomainError(f"q^{k} is not on the half-integer lattice")
        return cls(coeff, int(e))

    def is_zero(self) -> bool:
        return not self.coeff

    def __mul__(self, other):
        if isinstance(other, QMonomial):
            return QMonomial(self.coeff * other.coeff, self.xexp + other.xexp)
        try:
            return QMonomial(self.coeff * GaussRat.coerce(other), self.xexp)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return QMonomial(-self.coeff, self.xexp)

    def shifted(self, xexp: int) -> QMonomial:
        return QMonomial(self.coeff, self.xexp + xexp)

    def as_series(self, order: int) -> XSeries:
        return XSeries({self.xexp: self.coeff}, order)

    def negative_power(self, base_xexp: int) -> Optional[int]:
        """``N`` if this monomial is exactly ``base^(-N)`` with ``N >= 0``, else None."""
        if self.coeff != 1 or self.xexp > 0 or self.xexp % base_xexp:
            return None
        return -self.xexp // base_xexp

    def __str__(self):
        e = self.xexp
        if e == 0:
            return str(self.coeff)
        if e % 2 == 0:
            power = "q" if e == 2 else f"q^{e // 2}" if e > 0 else f"q^({e // 2})"
        else:
            power = "q2" if e == 1 else f"q2^{e}" if e > 0 else f"q2^({e})"
        c = self.coeff
        if c == 1:
            return power
        if c == -1:
            return "-" + power
        text = format_gauss(c.re, c.im)
        if c.re and c.im:
            text = f"({text})"
        return f"{text}*{power}"


Param = Union[QMonomial, XSeries]


def _loss(xexp: int, steps: int, stride: int) -> int:
    """Total order lost by multiplying in factors ``1 - c x^(xexp + k*stride)``, k < steps."""
    return sum(max(0, -(xexp + k * stride)) for k in range(steps))


def qpoch(a: Param, ratio_xexp: int, n, order_q: int) -> XSeries:
    """The q-Pochhammer product ``(a; x^ratio_xexp)_n`` through ``q^order_q``.

    ``n`` is a nonnegative integer or ``INF``.  ``(q; q^2)_n`` is
    ``qpoch(QMonomial.q(1), 4, n, order)``.  An infinite product stops at the
    first factor whose deviation from 1 starts at or beyond the truncation.
    """
    T = xorder(order_q)
    infinite = n == INF
    if not infinite and (n < 0 or int(n) != n):
        raise DomainError(f"Pochhammer length must be a nonnegative integer or INF, got {n}")
    if isinstance(a, QMonomial):
        if a.is_zero() or n == 0:
            return one(T)
        if infinite:
            if ratio_xexp <= 0:
                raise NonTerminatingProduct(f"(a; x^{ratio_xexp})_inf never stabilizes")
            steps = max(0, -((a.xexp - T) // ratio_xexp))
        else:
            steps = int(n)
        p = one(T + _loss(a.xexp, steps, ratio_xexp))
        for k in range(steps):
            p = mul_binomial(p, a.coeff, a.xexp + k * ratio_xexp)
        return p.truncate(T)

    if infinite:
        if ratio_xexp <= 0 and a.lowexp < T:
            raise NonTerminatingProduct(f"(a; x^{ratio_xexp})_inf never stabilizes")
        steps = 0
        while a.lowexp + steps * ratio_xexp < T:
            steps += 1
    else:
        steps = int(n)
    p = one(T)
    for k in range(steps):
        p = mul(p, 1 - a.shift(k * ratio_xexp))
    return p.truncate(T)


@dataclass(frozen=True)
class HypergeoSpec:
    """Parameters of ``_{r+1}phi_r(upper; lower; base, argument)``.

    ``base_xexp`` is the x-exponent of the base: 2 for base ``q``, 4 for ``q^2``.
    """

    upper: tuple
    lower: tuple
    argument: Param
    base_xexp: int = 2

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "lower", tuple(self.lower))
        if len(self.upper) != len(self.lower) + 1:
            raise DomainError(
                f"phi needs one more upper than lower parameter, got {len(self.upper)} and {len(self.lower)}")
        if self.base_xexp <= 0:
            raise DomainError("base must be a positive power of x")

    def terminates_at(self) -> Optional[int]:
        found = [a.negative_power(self.base_xexp) for a in self.upper]
        found = [N for N in found if N is not None]
        return min(found) if found else None


def cancel_parameters(spec: HypergeoSpec) -> HypergeoSpec:
    """Remove parameter pairs occurring in both the upper and lower lists.

    Matching is exact (coefficient and exponent); each lower entry cancels at
    most one upper entry.
    """
    upper = list(spec.upper)
    lower = []
    for b in spec.lower:
        if b in upper:
            upper.remove(b)
        else:
            lower.append(b)
    return replace(spec, upper=tuple(upper), lower=tuple(lower))


def _times_argument(term: XSeries, z: Param) -> XSeries:
    if isinstance(z, QMonomial):
        return term.shift(z.xexp).scale(z.coeff)
    return mul(term, z)


def phi(spec: HypergeoSpec, order_q: int, terminate_at: Optional[int] = None) -> XSeries:
    """Expand ``sum_j prod(a;base)_j / ((base;base)_j prod(b;base)_j) z^j`` through ``q^order_q``.

    The sum stops at ``j = N`` when an upper parameter is exactly ``base^(-N)``
    or when ``terminate_at`` is given; otherwise the argument must start at a
    positive power so the terms run past the truncation.  Terms are updated
    multiplicatively, so a vanishing upper factor kills every later term.
    """
    T = xorder(order_q)
    b = spec.base_xexp
    z = spec.argument
    stops = [N for N in (spec.terminates_at(), terminate_at) if N is not None]
    last = min(stops) if stops else None

    if z.is_zero():
        return one(T)
    if last is None:
        zlow = z.xexp if isinstance(z, QMonomial) else z.lowexp
        if zlow <= 0:
            raise NonTerminatingSeries("non-terminating phi needs an argument starting at a positive power")

    params = [*spec.upper, *spec.lower]
    settle = max([0] + [-(-max(0, -p.xexp) // b) for p in params if not p.is_zero()])
    loss_steps = last if last is not None else settle
    margin = sum(_loss(a.xexp, loss_steps, b) for a in spec.upper if not a.is_zero())
    if not isinstance(z, QMonomial) and z.lowexp < 0 and last is not None:
        margin += last * -z.lowexp

    term = one(T + margin)
    total = term
    j = 0
    while True:
        if last is not None and j >= last:
            break
        if last is None and j >= settle and term.lowexp >= T:
            break
        for a in spec.upper:
            term = mul_binomial(term, a.coeff, a.xexp + j * b)
        term = div_binomial(term, 1, (j + 1) * b)
        for lo in spec.lower:
            e = lo.xexp + j * b
            if lo.coeff == 1 and e == 0:
                raise DivisionByZeroTerm(
                    f"lower parameter {lo} makes ({lo}; base)_{j + 1} vanish")
            term = div_binomial(term, lo.coeff, e)
        term = _times_argument(term, z)
        total = total + term
        j += 1
    return total.truncate(T)


def little_q_jacobi(n: int, x_arg: Param, alpha: QMonomial, beta: QMonomial,
                    order_q: int) -> XSeries:
    """``p_n(x; alpha, beta : q)``, the terminating 2phi1 with n+1 terms.

    Upper parameters ``q^(-n)`` and ``alpha*beta*q^(n+1)``, lower ``alpha*q``,
    argument ``q*x``.  Identical upper/lower pairs are cancelled first; the
    sum still stops at ``j = n``.
    """
    if n < 0:
        raise DomainError(f"degree must be nonnegative, got {n}")
    alpha, beta = QMonomial(alpha.coeff, alpha.xexp), QMonomial(beta.coeff, beta.xexp)
    upper = (QMonomial.q(-n), (alpha * beta).shifted(2 * (n + 1)))
    lower = (alpha.shifted(2),)
    z = x_arg.shifted(2) if isinstance(x_arg, QMonomial) else x_arg.shift(2)
    spec = cancel_parameters(HypergeoSpec(upper, lower, z))
    for lo in spec.lower:
        N = lo.negative_power(2)
        if N is not None and N < n:
            raise DivisionByZeroTerm(f"lower parameter {lo} vanishes before the series terminates")
    return phi(spec, order_q, terminate_at=n)


def little_jacobi_special(n: int, order_q: int) -> XSeries:
    """``p_2n(-1; q^(-2n-1), -1 : q)`` as the finite sum of ``(-1;q)_j/(q;q)_j (-q)^j``, j <= 2n."""
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    T = xorder(order_q)
    u = one(T)
    total = u
    for j in range(1, 2 * n + 1):
        u = mul_binomial(u, -1, 2 * (j - 1))
        u = div_binomial(u, 1, 2 * j)
        u = u.shift(2).scale(-1)
        total = total + u
    return total.truncate(T)
