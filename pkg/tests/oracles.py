"""Independent reference computations built on sympy rational functions."""

from fractions import Fraction

import sympy

from qseries.gaussrat import GaussRat
from qseries.series import XSeries

x = sympy.Symbol("x")  # x = q^(1/2)
q = x**2


def sym_pochhammer(a, base, n):
    return sympy.prod([1 - a * base**k for k in range(n)])


def to_gauss(c) -> GaussRat:
    re, im = sympy.Rational(sympy.re(c)), sympy.Rational(sympy.im(c))
    return GaussRat(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


def _expand_rational(expr, T: int) -> dict:
    num, den = sympy.fraction(sympy.together(expr))
    shift = 0
    # clear negative powers of x
    for part in (num, den):
        for term in sympy.Add.make_args(sympy.expand(part)):
            shift = max(shift, -int(term.as_coeff_exponent(x)[1]))
    n = {m[0]: c for m, c in sympy.Poly(sympy.expand(num * x**shift), x).terms()}
    d = {m[0]: c for m, c in sympy.Poly(sympy.expand(den * x**shift), x).terms()}
    low = min(d)
    out = {}
    for e in range(min(n) - low, T):
        acc = n.get(e + low, 0) - sum(c * d.get(e + low - k, 0) for k, c in out.items())
        c = sympy.expand(acc / d[low])
        if c != 0:
            out[e] = c
    return out


def expand(expr, order_q: int) -> XSeries:
    """Laurent expansion in x through q^order_q, by long division of sympy polynomials.

    A list of summands, or a sum, is expanded term by term to keep the
    rational functions small.
    """
    T = 2 * order_q + 1
    terms = expr if isinstance(expr, (list, tuple)) else sympy.Add.make_args(expr)
    total = {}
    for term in terms:
        for e, c in _expand_rational(term, T).items():
            total[e] = total.get(e, 0) + c
    return XSeries({e: to_gauss(c) for e, c in total.items() if c != 0}, T)
