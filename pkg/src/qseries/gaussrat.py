"""Exact Gaussian rationals ``re + im*i`` with arbitrary-precision parts."""

from __future__ import annotations

import numbers
from fractions import Fraction
from typing import Union

Scalar = Union["GaussRat", int, Fraction]


class GaussRat:
    """An exact complex number whose real and imaginary parts are rationals.

    Both parts are stored as :class:`fractions.Fraction`, so they are always
    in lowest terms with a positive denominator.  Instances are immutable and
    hashable; a GaussRat with zero imaginary part hashes and compares like the
    corresponding Fraction.
    """

    __slots__ = ("_re", "_im")

    def __init__(self, re=0, im=0):
        self._re = Fraction(re)
        self._im = Fraction(im)

    @classmethod
    def coerce(cls, value) -> GaussRat:
        if isinstance(value, GaussRat):
            return value
        if isinstance(value, numbers.Rational):
            return cls(value)
        if isinstance(value, str):
            return cls(Fraction(value))
        raise TypeError(f"cannot convert {value!r} to GaussRat")

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    def is_real(self) -> bool:
        return self._im == 0

    def is_integer(self) -> bool:
        """True for rational integers (zero imaginary part, denominator 1)."""
        return self._im == 0 and self._re.denominator == 1

    def conjugate(self) -> GaussRat:
        return GaussRat(self._re, -self._im)

    def norm(self) -> Fraction:
        return self._re * self._re + self._im * self._im

    def __bool__(self):
        return bool(self._re) or bool(self._im)

    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self._re == other._re and self._im == other._im
        if isinstance(other, numbers.Rational):
            return self._im == 0 and self._re == other
        return NotImplemented

    def __hash__(self):
        if self._im == 0:
            return hash(self._re)
        return hash((self._re, self._im))

    def __repr__(self):
        return f"GaussRat({self})"

    def __str__(self):
        return format_gauss(self._re, self._im)

    def __neg__(self):
        return GaussRat(-self._re, -self._im)

    def __pos__(self):
        return self

    def __add__(self, other):
        try:
            other = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRat(self._re + other._re, self._im + other._im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRat(self._re - other._re, self._im - other._im)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        try:
            other = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self._re, self._im, other._re, other._im
        return GaussRat(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("GaussRat division by zero")
        return self * GaussRat(other._re / n, -other._im / n)

    def __rtruediv__(self, other):
        return GaussRat.coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return GaussRat(1) / self ** (-k)
        result, base = GaussRat(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


I = GaussRat(0, 1)


def format_gauss(re, im) -> str:
    """Render ``re + im*i`` in the text encoding shared by the CLI and qexpr.

    The output always reparses as a qexpr expression, e.g. ``1/2-3/4*i``.
    """
    re, im = Fraction(re), Fraction(im)
    if im == 0:
        return str(re)
    if im == 1:
        imag = "i"
    elif im == -1:
        imag = "-i"
    else:
        imag = f"{im}*i"
    if re == 0:
        return imag
    sign = "" if imag.startswith("-") else "+"
    return f"{re}{sign}{imag}"
