"""Truncated Laurent series in ``x = q^(1/2)`` with Gaussian-rational coefficients.

A series ``XSeries`` is a sparse map from integer x-exponents to exact
coefficients together with a truncation order ``N``: every coefficient at an
exponent below ``N`` is known exactly, nothing at or above ``N`` is.  The
power ``q^n`` lives at x-exponent ``2n``.

Coefficients are kept internally as two dicts of :class:`gmpy2.mpq` (real and
imaginary part, the latter usually empty) and surface as :class:`GaussRat`.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Optional

from gmpy2 import mpq

from .errors import InsufficientOrder, ZeroSeries
from .gaussrat import GaussRat, format_gauss

_ZERO = mpq(0)
_ONE = mpq(1)


def xorder(order_q: int) -> int:
    """Truncation order in x-units needed to know everything through ``q^order_q``."""
    return 2 * order_q + 1


def _pair(c) -> tuple[mpq, mpq]:
    if isinstance(c, GaussRat):
        return mpq(c.re), mpq(c.im)
    if isinstance(c, numbers.Rational):
        return mpq(c), _ZERO
    if isinstance(c, str):
        return mpq(Fraction(c)), _ZERO
    raise TypeError(f"unsupported scalar {c!r}")


def _gauss(re, im) -> GaussRat:
    return GaussRat(Fraction(int(re.numerator), int(re.denominator)),
                    Fraction(int(im.numerator), int(im.denominator)))


def _is_scalar(value) -> bool:
    return isinstance(value, (GaussRat, numbers.Rational))


def _conv(a: dict, b: dict, limit: int) -> dict:
    """Truncated convolution of two sparse coefficient dicts."""
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    bi = sorted(b.items())
    out: dict = {}
    get = out.get
    for e1, c1 in a.items():
        lim = limit - e1
        for e2, c2 in bi:
            if e2 >= lim:
                break
            e = e1 + e2
            out[e] = get(e, 0) + c1 * c2
    return out


def _combine(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    get = out.get
    if sign > 0:
        for e, c in b.items():
            out[e] = get(e, 0) + c
    else:
        for e, c in b.items():
            out[e] = get(e, 0) - c
    return out


def _scaled(d: dict, c) -> dict:
    return {e: v * c for e, v in d.items()}


class XSeries:
    """An immutable truncated Laurent series in ``x = q^(1/2)``.

    ``XSeries({0: 1, 2: -1}, order=9)`` is ``1 - q + O(x^9)``.  Arithmetic
    operators combine series with each other and with exact scalars
    (``int``, ``Fraction``, ``GaussRat``); scalars are exact to every order.
    """

    __slots__ = ("_re", "_im", "_order")

    def __init__(self, coeffs: Optional[Mapping[int, object]] = None, order: int = 0):
        re, im = {}, {}
        for e, c in (coeffs or {}).items():
            r, i = _pair(c)
            re[int(e)] = r
            im[int(e)] = i
        self._set(re, im, int(order))

    def _set(self, re: dict, im: dict, order: int) -> None:
        self._re = {e: c for e, c in re.items() if c and e < order}
        self._im = {e: c for e, c in im.items() if c and e < order}
        self._order = order

    @classmethod
    def _raw(cls, re: dict, im: dict, order: int) -> XSeries:
        s = cls.__new__(cls)
        s._set(re, im, order)
        return s

    # -- inspection -------------------------------------------------------

    @property
    def order(self) -> int:
        return self._order

    @property
    def lowexp(self) -> int:
        """Least stored exponent, or the order for the zero series."""
        keys = [*self._re, *self._im]
        return min(keys) if keys else self._order

    def is_zero(self) -> bool:
        return not self._re and not self._im

    def is_real(self) -> bool:
        return not self._im

    def is_even(self) -> bool:
        """True if every stored exponent is even, i.e. the series lives in ``q``."""
        return all(e % 2 == 0 for e in (*self._re, *self._im))

    def exponents(self) -> list[int]:
        return sorted({*self._re, *self._im})

    def coeff(self, e: int) -> GaussRat:
        if e >= self._order:
            raise InsufficientOrder(f"x^{e} is beyond truncation order {self._order}")
        return _gauss(self._re.get(e, _ZERO), self._im.get(e, _ZERO))

    def __getitem__(self, e: int) -> GaussRat:
        return self.coeff(e)

    def items(self) -> Iterator[tuple[int, GaussRat]]:
        for e in self.exponents():
            yield e, _gauss(self._re.get(e, _ZERO), self._im.get(e, _ZERO))

    def coeff_q(self, n: int) -> GaussRat:
        if 2 * n >= self._order:
            raise InsufficientOrder(f"q^{n} needs order > {2 * n}, have {self._order}")
        return self.coeff(2 * n)

    def __len__(self):
        return len({*self._re, *self._im})

    def __eq__(self, other):
        if not isinstance(other, XSeries):
            return NotImplemented
        return (self._order == other._order and self._re == other._re
                and self._im == other._im)

    __hash__ = None

    def __repr__(self):
        return f"XSeries({format_series(self)}, order={self._order})"

    def __str__(self):
        return format_series(self)

    # -- structural ops ---------------------------------------------------

    def truncate(self, order: int) -> XSeries:
        return XSeries._raw(self._re, self._im, min(order, self._order))

    def shift(self, e: int) -> XSeries:
        """Exact multiplication by ``x^e``."""
        return XSeries._raw({k + e: c for k, c in self._re.items()},
                            {k + e: c for k, c in self._im.items()}, self._order + e)

    def scale(self, c) -> XSeries:
        """Exact multiplication by a scalar; the order is unchanged."""
        cr, ci = _pair(c)
        if not ci:
            return XSeries._raw(_scaled(self._re, cr), _scaled(self._im, cr), self._order)
        re = _combine(_scaled(self._re, cr), _scaled(self._im, ci), -1)
        im = _combine(_scaled(self._im, cr), _scaled(self._re, ci))
        return XSeries._raw(re, im, self._order)

    def conjugate(self) -> XSeries:
        return XSeries._raw(self._re, _scaled(self._im, -1), self._order)

    # -- arithmetic -------------------------------------------------------

    def __neg__(self):
        return negate(self)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, XSeries):
            return add(self, other)
        if _is_scalar(other):
            return self._add_const(other)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, XSeries):
            return add(self, negate(other))
        if _is_scalar(other):
            return self._add_const(-GaussRat.coerce(other))
        return NotImplemented

    def __rsub__(self, other):
        if _is_scalar(other):
            return negate(self)._add_const(other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, XSeries):
            return mul(self, other)
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, XSeries):
            return divide(self, other)
        if _is_scalar(other):
            c = GaussRat.coerce(other)
            if not c:
                raise ZeroSeries("division by the zero scalar")
            return self.scale(1 / c)
        return NotImplemented

    def __rtruediv__(self, other):
        if _is_scalar(other):
            return invert(self).scale(other)
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return invert(self) ** (-k)
        if k == 0:
            return one(self._order)
        result, base = None, self
        while k:
            if k & 1:
                result = base if result is None else mul(result, base)
            k >>= 1
            if k:
                base = mul(base, base)
        return result

    def _add_const(self, c) -> XSeries:
        cr, ci = _pair(c)
        re, im = dict(self._re), dict(self._im)
        if cr:
            re[0] = re.get(0, _ZERO) + cr
        if ci:
            im[0] = im.get(0, _ZERO) + ci
        return XSeries._raw(re, im, self._order)


# -- constructors -------------------------------------------------------------


def monomial(c, e: int, order: int) -> XSeries:
    """The series ``c * x^e`` truncated at ``order``."""
    cr, ci = _pair(c)
    return XSeries._raw({e: cr}, {e: ci}, order)


def zero(order: int) -> XSeries:
    return XSeries._raw({}, {}, order)


def one(order: int) -> XSeries:
    return monomial(1, 0, order)


# -- ring operations ----------------------------------------------------------


def add(a: XSeries, b: XSeries) -> XSeries:
    return XSeries._raw(_combine(a._re, b._re), _combine(a._im, b._im),
                        min(a._order, b._order))


def negate(a: XSeries) -> XSeries:
    return XSeries._raw(_scaled(a._re, -1), _scaled(a._im, -1), a._order)


def sub(a: XSeries, b: XSeries) -> XSeries:
    return add(a, negate(b))


def mul(a: XSeries, b: XSeries) -> XSeries:
    """Product; the order is ``min(order(a) + lowexp(b), order(b) + lowexp(a))``."""
    order = min(a._order + b.lowexp, b._order + a.lowexp)
    re = _conv(a._re, b._re, order)
    im = {}
    if a._im and b._im:
        re = _combine(re, _conv(a._im, b._im, order), -1)
    if a._im or b._im:
        im = _combine(_conv(a._re, b._im, order), _conv(a._im, b._re, order))
    return XSeries._raw(re, im, order)


def invert(a: XSeries) -> XSeries:
    """Multiplicative inverse of a unit; the result starts at ``x^(-lowexp(a))``."""
    return divide(one(a._order - a.lowexp if not a.is_zero() else a._order), a)


def divide(a: XSeries, b: XSeries) -> XSeries:
    """Quotient ``a / b`` with the same order as ``mul(a, invert(b))``."""
    if b.is_zero():
        raise ZeroSeries(f"divisor has no nonzero coefficient below order {b.order}")
    lb, la = b.lowexp, a.lowexp
    order = min(a._order - lb, b._order - 2 * lb + la)
    start = la - lb
    span = order - start
    b0r, b0i = b._re.get(lb, _ZERO), b._im.get(lb, _ZERO)
    keys = sorted(k for k in {*b._re, *b._im} if lb < k < lb + span)
    if not a._im and not b._im:
        inv = 1 / b0r
        rest = [(k - lb, b._re[k]) for k in keys]
        ar = a._re
        out: dict = {}
        for e in range(start, order):
            s = ar.get(e + lb, _ZERO)
            top = e - start
            for d, bk in rest:
                if d > top:
                    break
                v = out.get(e - d)
                if v is not None:
                    s -= bk * v
            if s:
                out[e] = s * inv
        return XSeries._raw(out, {}, order)
    nrm = b0r * b0r + b0i * b0i
    ir, ii = b0r / nrm, -b0i / nrm
    rest = [(k - lb, b._re.get(k, _ZERO), b._im.get(k, _ZERO)) for k in keys]
    outr: dict = {}
    outi: dict = {}
    for e in range(start, order):
        sr = a._re.get(e + lb, _ZERO)
        si = a._im.get(e + lb, _ZERO)
        top = e - start
        for d, br, bi in rest:
            if d > top:
                break
            vr = outr.get(e - d)
            vi = outi.get(e - d)
            if vr is not None:
                sr -= br * vr
                si -= bi * vr
            if vi is not None:
                sr += bi * vi
                si -= br * vi
        if sr or si:
            outr[e] = sr * ir - si * ii
            outi[e] = sr * ii + si * ir
    return XSeries._raw(outr, outi, order)


def mul_binomial(a: XSeries, c, e: int) -> XSeries:
    """Exact product ``a * (1 - c x^e)``; order becomes ``order(a) + min(0, e)``."""
    cr, ci = _pair(c)
    if not cr and not ci:
        return a
    order = a._order + min(0, e)
    if not ci:
        re = _combine(a._re, {k + e: v * cr for k, v in a._re.items()}, -1)
        im = _combine(a._im, {k + e: v * cr for k, v in a._im.items()}, -1)
        return XSeries._raw(re, im, order)
    t = a.shift(e).scale(GaussRat(Fraction(int(cr.numerator), int(cr.denominator)),
                                  Fraction(int(ci.numerator), int(ci.denominator))))
    return XSeries._raw(_combine(a._re, t._re, -1), _combine(a._im, t._im, -1), order)


def div_binomial(a: XSeries, c, e: int) -> XSeries:
    """Exact quotient ``a / (1 - c x^e)``; order becomes ``order(a) - min(0, e)``."""
    cr, ci = _pair(c)
    if not cr and not ci:
        return a
    if e == 0:
        dr, di = _ONE - cr, -ci
        if not dr and not di:
            raise ZeroSeries("division by the vanishing constant 1 - 1")
        n = dr * dr + di * di
        return a.scale(_gauss(dr / n, -di / n))
    if e < 0:
        n = cr * cr + ci * ci
        inv = _gauss(cr / n, -ci / n)
        return div_binomial(a.shift(-e).scale(-inv), inv, -e)
    order = a._order
    low = a.lowexp
    if not ci and not a._im:
        src = a._re
        out: dict = {}
        for k in range(low, order):
            v = src.get(k, _ZERO)
            prev = out.get(k - e)
            if prev is not None:
                v = v + cr * prev
            if v:
                out[k] = v
        return XSeries._raw(out, {}, order)
    outr: dict = {}
    outi: dict = {}
    for k in range(low, order):
        vr = a._re.get(k, _ZERO)
        vi = a._im.get(k, _ZERO)
        pr = outr.get(k - e)
        pi = outi.get(k - e)
        if pr is not None or pi is not None:
            pr = pr or _ZERO
            pi = pi or _ZERO
            vr = vr + cr * pr - ci * pi
            vi = vi + cr * pi + ci * pr
        if vr or vi:
            outr[k] = vr
            outi[k] = vi
    return XSeries._raw(outr, outi, order)


# -- comparison and reporting -------------------------------------------------


@dataclass(frozen=True)
class Mismatch:
    """First x-exponent at which two series disagree."""

    exponent: int
    lhs: GaussRat
    rhs: GaussRat


def equal_up_to(a: XSeries, b: XSeries, n_q: int) -> Optional[Mismatch]:
    """Compare coefficients of ``a`` and ``b`` at every x-exponent ``<= 2*n_q``.

    Returns ``None`` on agreement, otherwise the smallest disagreement.
    """
    need = xorder(n_q)
    for s in (a, b):
        if s.order < need:
            raise InsufficientOrder(f"comparison through q^{n_q} needs order {need}, have {s.order}")
    for e in sorted({*a._re, *a._im, *b._re, *b._im}):
        if e > 2 * n_q:
            break
        ca, cb = a.coeff(e), b.coeff(e)
        if ca != cb:
            return Mismatch(e, ca, cb)
    return None


def coeff_q(a: XSeries, n: int) -> GaussRat:
    return a.coeff_q(n)


def truncate(a: XSeries, order: int) -> XSeries:
    return a.truncate(order)


NOT_DIVISIBLE = "not_divisible"
NON_INTEGRAL = "non_integral"


@dataclass(frozen=True)
class Violation:
    kind: str  # NOT_DIVISIBLE or NON_INTEGRAL
    exponent: int
    coefficient: GaussRat


@dataclass(frozen=True)
class DivisibilityReport:
    modulus: int
    order_q: int
    violation: Optional[Violation] = None

    @property
    def passed(self) -> bool:
        return self.violation is None


def divisibility_report(a: XSeries, m: int, n_q: int) -> DivisibilityReport:
    """Check that every coefficient through ``q^n_q`` is a rational integer divisible by ``m``.

    Non-integral coefficients are reported as such even when a later
    coefficient would also fail divisibility; the first offending exponent wins.
    """
    need = xorder(n_q)
    if a.order < need:
        raise InsufficientOrder(f"divisibility through q^{n_q} needs order {need}, have {a.order}")
    for e, c in a.items():
        if e > 2 * n_q:
            break
        if not c.is_integer():
            return DivisibilityReport(m, n_q, Violation(NON_INTEGRAL, e, c))
        if c.re.numerator % m:
            return DivisibilityReport(m, n_q, Violation(NOT_DIVISIBLE, e, c))
    return DivisibilityReport(m, n_q)


# -- text rendering -----------------------------------------------------------


def format_power(e: int) -> str:
    """Render ``x^e`` as a power of ``q``: ``q``, ``q^3``, ``q^(1/2)``, ``q^(-3/2)``."""
    if e == 0:
        return ""
    if e % 2 == 0:
        k = e // 2
        if k == 1:
            return "q"
        return f"q^{k}" if k > 0 else f"q^({k})"
    return f"q^({e}/2)"


def format_series(a: XSeries) -> str:
    """Human-readable ascending expansion, e.g. ``1/2 - q + q^2``; no order term."""
    parts = []
    for e, c in a.items():
        mono = format_power(e)
        if c.is_real() or c.re == 0:
            val, unit = (c.re, "") if c.is_real() else (c.im, "i")
            neg = val < 0
            mag = -val if neg else val
            factors = [f for f in (str(mag) if mag != 1 else "", unit, mono) if f]
            body = "*".join(factors) or "1"
        else:
            neg = False
            text = format_gauss(c.re, c.im)
            body = f"({text})*{mono}" if mono else text
        parts.append((neg, body))
    if not parts:
        return "0"
    neg, body = parts[0]
    out = ["-" + body if neg else body]
    for neg, body in parts[1:]:
        out.append(("- " if neg else "+ ") + body)
    return " ".join(out)
