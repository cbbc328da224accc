"""A small expression language for expanding q-series from the command line.

Grammar (whitespace-insensitive)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('-' | '+') unary | power
    power   := atom ('^' exponent)?
    exponent:= INT | '-' INT | '(' '-'? INT ('/' '2')? ')'
    atom    := INT | 'i' | 'q' | 'q2' | '(' expr ')' | call
    call    := 'qpoch' '(' expr ';' expr ';' (INT | 'inf') ')'
             | 'phi' '(' '[' list ']' ';' '[' list ']' ';' expr ';' expr ')'
             | 'pjacobi' '(' INT ';' expr ';' expr ';' expr ')'
    list    := (expr (',' expr)*)?

``q2`` is ``q^(1/2)``; ``q^(k/2)`` is also accepted, so printed series
parse back.  Rationals are written as quotients (``1/2``).
Hypergeometric parameters, the ``qpoch`` base and the ``pjacobi`` alpha and
beta must evaluate to monomials ``c*q^(k/2)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import QSeriesError
from .gaussrat import I
from .qtoolkit import INF, HypergeoSpec, QMonomial, cancel_parameters, little_q_jacobi, phi, qpoch
from .series import XSeries, divide, monomial, xorder

FUNCTIONS = ("qpoch", "phi", "pjacobi")
_PUNCT = "+-*/^()[];,"


class ExprSyntaxError(ValueError):
    """Parse failure with a 0-based byte offset into the source text."""

    def __init__(self, message: str, offset: int, expected: str):
        super().__init__(f"{message} at offset {offset}: expected {expected}")
        self.offset = offset
        self.expected = expected


class EvalError(Exception):
    """Evaluation failure attributed to the byte span of a subexpression."""

    def __init__(self, message: str, span: tuple[int, int]):
        super().__init__(f"{message} (offsets {span[0]}-{span[1]})")
        self.message = message
        self.span = span


# -- AST -------------------------------------------------------------------------

_SPAN = dict(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Num:
    value: int
    span: tuple = field(**_SPAN)


@dataclass(frozen=True)
class Imag:
    span: tuple = field(**_SPAN)


@dataclass(frozen=True)
class Sym:
    name: str  # "q" or "q2"
    span: tuple = field(**_SPAN)


@dataclass(frozen=True)
class Neg:
    operand: "Expr"
    span: tuple = field(**_SPAN)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"
    span: tuple = field(**_SPAN)


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int
    span: tuple = field(**_SPAN)


@dataclass(frozen=True)
class QPoch:
    a: "Expr"
    ratio: "Expr"
    n: Optional[int]  # None means infinity
    span: tuple = field(**_SPAN)


@dataclass(frozen=True)
class Phi:
    upper: tuple
    lower: tuple
    base: "Expr"
    z: "Expr"
    span: tuple = field(**_SPAN)


@dataclass(frozen=True)
class PJacobi:
    n: int
    x: "Expr"
    alpha: "Expr"
    beta: "Expr"
    span: tuple = field(**_SPAN)


Expr = Union[Num, Imag, Sym, Neg, BinOp, Pow, QPoch, Phi, PJacobi]


# -- tokenizer -------------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    start: int
    end: int


def tokenize(text: str) -> list[Token]:
    out = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(Token("int", text[i:j], i, j))
            i = j
        elif c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(Token("name", text[i:j], i, j))
            i = j
        elif c in _PUNCT:
            out.append(Token("op", c, i, i + 1))
            i += 1
        else:
            raise ExprSyntaxError(f"unexpected character {c!r}", _byte_offset(text, i),
                                  "a number, name, operator or bracket")
    out.append(Token("end", "", n, n))
    return out


def _byte_offset(text: str, i: int) -> int:
    return len(text[:i].encode("utf-8"))


# -- parser ----------------------------------------------------------------------

_BINARY = {"+": 1, "-": 1, "*": 2, "/": 2}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def fail(self, expected: str):
        t = self.tok
        what = "end of input" if t.kind == "end" else f"{t.text!r}"
        raise ExprSyntaxError(f"unexpected {what}", _byte_offset(self.text, t.start), expected)

    def take(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind not in ("op", "name"):
            self.fail(repr(text))
        t = self.tok
        self.pos += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind in ("op", "name") and self.tok.text == text

    def integer(self) -> int:
        if self.tok.kind != "int":
            self.fail("an integer literal")
        v = int(self.tok.text)
        self.pos += 1
        return v

    def parse(self) -> Expr:
        e = self.expr(1)
        if self.tok.kind != "end":
            self.fail("an operator or end of input")
        return e

    def expr(self, min_prec: int) -> Expr:
        left = self.unary()
        while self.tok.kind == "op" and _BINARY.get(self.tok.text, 0) >= min_prec:
            op = self.tok.text
            self.pos += 1
            right = self.expr(_BINARY[op] + 1)
            left = BinOp(op, left, right, (left.span[0], right.span[1]))
        return left

    def unary(self) -> Expr:
        if self.at("-") or self.at("+"):
            t = self.tok
            self.pos += 1
            operand = self.unary()
            if t.text == "+":
                return operand
            return Neg(operand, (t.start, operand.span[1]))
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if not self.at("^"):
            return base
        self.pos += 1
        if self.at("("):
            self.pos += 1
            sign = -1 if self.at("-") and self.take("-") else 1
            k = sign * self.integer()
            if self.at("/"):
                # q^(k/2), the form series are printed in
                if base != Sym("q"):
                    self.fail("')' (only q takes a half-integer exponent)")
                self.pos += 1
                if self.tok.kind != "int" or self.tok.text != "2":
                    self.fail("the denominator 2")
                self.pos += 1
                end = self.take(")").end
                if k % 2:
                    return Pow(Sym("q2", base.span), k, (base.span[0], end))
                k //= 2
                return Pow(base, k, (base.span[0], end))
            end = self.take(")").end
        else:
            sign = -1 if self.at("-") and self.take("-") else 1
            end = self.tok.end
            k = sign * self.integer()
        return Pow(base, k, (base.span[0], end))

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "int":
            self.pos += 1
            return Num(int(t.text), (t.start, t.end))
        if t.kind == "name":
            if t.text in FUNCTIONS:
                return self.call()
            if t.text in ("q", "q2"):
                self.pos += 1
                return Sym(t.text, (t.start, t.end))
            if t.text == "i":
                self.pos += 1
                return Imag((t.start, t.end))
            self.fail("an expression (unknown name)")
        if self.at("("):
            self.pos += 1
            e = self.expr(1)
            self.take(")")
            return e
        self.fail("an expression")

    def _list(self) -> tuple:
        self.take("[")
        items = []
        if not self.at("]"):
            items.append(self.expr(1))
            while self.at(","):
                self.pos += 1
                items.append(self.expr(1))
        self.take("]")
        return tuple(items)

    def call(self) -> Expr:
        name = self.tok
        self.pos += 1
        self.take("(")
        if name.text == "qpoch":
            a = self.expr(1)
            self.take(";")
            ratio = self.expr(1)
            self.take(";")
            if self.at("inf"):
                self.pos += 1
                n = None
            else:
                n = self.integer()
            end = self.take(")").end
            return QPoch(a, ratio, n, (name.start, end))
        if name.text == "phi":
            upper = self._list()
            self.take(";")
            lower = self._list()
            self.take(";")
            base = self.expr(1)
            self.take(";")
            z = self.expr(1)
            end = self.take(")").end
            return Phi(upper, lower, base, z, (name.start, end))
        n = self.integer()
        args = []
        for _ in range(3):
            self.take(";")
            args.append(self.expr(1))
        end = self.take(")").end
        return PJacobi(n, *args, (name.start, end))


def parse(text: str) -> Expr:
    """Parse ``text`` into an AST; raises :class:`ExprSyntaxError`."""
    return _Parser(text).parse()


# -- pretty printer --------------------------------------------------------------


def pretty(e: Expr) -> str:
    """Canonical source text for ``e``; ``parse(pretty(e)) == e``."""
    return _pp(e, 0)


def _pp(e: Expr, ctx: int) -> str:
    if isinstance(e, Num):
        s, p = str(e.value), 5
    elif isinstance(e, Imag):
        s, p = "i", 5
    elif isinstance(e, Sym):
        s, p = e.name, 5
    elif isinstance(e, Neg):
        s, p = "-" + _pp(e.operand, 3), 3
    elif isinstance(e, BinOp):
        p = _BINARY[e.op]
        sep = f" {e.op} " if p == 1 else e.op
        s = _pp(e.left, p) + sep + _pp(e.right, p + 1)
    elif isinstance(e, Pow):
        k = str(e.exponent) if e.exponent >= 0 else f"({e.exponent})"
        s, p = f"{_pp(e.base, 5)}^{k}", 4
    elif isinstance(e, QPoch):
        n = "inf" if e.n is None else str(e.n)
        s, p = f"qpoch({pretty(e.a)}; {pretty(e.ratio)}; {n})", 5
    elif isinstance(e, Phi):
        up = ", ".join(pretty(x) for x in e.upper)
        lo = ", ".join(pretty(x) for x in e.lower)
        s, p = f"phi([{up}]; [{lo}]; {pretty(e.base)}; {pretty(e.z)})", 5
    elif isinstance(e, PJacobi):
        s = f"pjacobi({e.n}; {pretty(e.x)}; {pretty(e.alpha)}; {pretty(e.beta)})"
        p = 5
    else:
        raise TypeError(f"not an expression node: {e!r}")
    return f"({s})" if p < ctx else s


# -- evaluation ------------------------------------------------------------------


def as_monomial(e: Expr) -> Optional[QMonomial]:
    """Exact value of ``e`` if it is a monomial ``c*q^(k/2)``, else None."""
    if isinstance(e, Num):
        return QMonomial(e.value)
    if isinstance(e, Imag):
        return QMonomial(I)
    if isinstance(e, Sym):
        return QMonomial(1, 2 if e.name == "q" else 1)
    if isinstance(e, Neg):
        m = as_monomial(e.operand)
        return None if m is None else -m
    if isinstance(e, Pow):
        m = as_monomial(e.base)
        if m is None or (m.is_zero() and e.exponent < 0):
            return None
        return QMonomial(m.coeff ** e.exponent, m.xexp * e.exponent)
    if isinstance(e, BinOp):
        a, b = as_monomial(e.left), as_monomial(e.right)
        if a is None or b is None:
            return None
        if e.op == "*":
            return a * b
        if e.op == "/":
            if b.is_zero():
                return None
            return QMonomial(a.coeff / b.coeff, a.xexp - b.xexp)
        if e.op == "-":
            b = -b
        if a.is_zero():
            return b
        if b.is_zero() or a.xexp == b.xexp:
            return QMonomial(a.coeff + b.coeff, a.xexp)
    return None


class _ZeroDivisor(EvalError):
    """A divisor vanished at the current working order; it may be nonzero higher up."""


class _Evaluator:
    def __init__(self, text: str, work: int):
        self.text = text
        self.work = work  # x-order used for intermediate constants

    def bspan(self, e: Expr) -> tuple[int, int]:
        return (_byte_offset(self.text, e.span[0]), _byte_offset(self.text, e.span[1]))

    def err(self, e: Expr, exc: Exception) -> EvalError:
        return EvalError(f"{type(exc).__name__}: {exc}", self.bspan(e))

    def param(self, e: Expr) -> Union[QMonomial, XSeries]:
        m = as_monomial(e)
        return m if m is not None else self.eval(e)

    def monomial(self, e: Expr, what: str) -> QMonomial:
        m = as_monomial(e)
        if m is None:
            raise EvalError(f"{what} must be a monomial c*q^(k/2)", self.bspan(e))
        return m

    def eval(self, e: Expr) -> XSeries:
        W = self.work
        oq = W // 2
        m = as_monomial(e)
        if m is not None:
            return monomial(m.coeff, m.xexp, max(W, m.xexp + 1))
        if isinstance(e, Num):
            return monomial(e.value, 0, W)
        if isinstance(e, Imag):
            return monomial(I, 0, W)
        if isinstance(e, Sym):
            return monomial(1, 2 if e.name == "q" else 1, W)
        if isinstance(e, Neg):
            return -self.eval(e.operand)
        try:
            if isinstance(e, BinOp):
                a, b = self.eval(e.left), self.eval(e.right)
                if e.op == "+":
                    return a + b
                if e.op == "-":
                    return a - b
                if e.op == "*":
                    return a * b
                if b.is_zero():
                    raise _ZeroDivisor("zero divisor", self.bspan(e.right))
                return divide(a, b)
            if isinstance(e, Pow):
                base = self.eval(e.base)
                if e.exponent < 0 and base.is_zero():
                    raise _ZeroDivisor("zero divisor", self.bspan(e.base))
                return base ** e.exponent
            if isinstance(e, QPoch):
                ratio = self.monomial(e.ratio, "qpoch base")
                if ratio.coeff != 1:
                    raise EvalError("qpoch base must be a power of q2", self.bspan(e.ratio))
                n = INF if e.n is None else e.n
                return qpoch(self.param(e.a), ratio.xexp, n, oq).truncate(W)
            if isinstance(e, Phi):
                base = self.monomial(e.base, "phi base")
                if base.coeff != 1 or base.xexp <= 0:
                    raise EvalError("phi base must be a positive power of q2", self.bspan(e.base))
                upper = [self.monomial(x, "phi parameter") for x in e.upper]
                lower = [self.monomial(x, "phi parameter") for x in e.lower]
                spec = HypergeoSpec(upper, lower, self.param(e.z), base.xexp)
                stop = spec.terminates_at()
                return phi(cancel_parameters(spec), oq, terminate_at=stop).truncate(W)
            if isinstance(e, PJacobi):
                alpha = self.monomial(e.alpha, "pjacobi alpha")
                beta = self.monomial(e.beta, "pjacobi beta")
                return little_q_jacobi(e.n, self.param(e.x), alpha, beta, oq).truncate(W)
        except QSeriesError as exc:
            raise self.err(e, exc) from exc
        raise TypeError(f"not an expression node: {e!r}")


def evaluate(e: Union[str, Expr], order_q: int, text: str = "") -> XSeries:
    """Expand ``e`` exactly through ``q^order_q``.

    Intermediate constants start at the target order.  If truncation losses
    (negative powers, divisions) leave the result short, or a divisor looks
    zero only because its leading term lies past the working order,
    evaluation is repeated at a higher working order.
    """
    if isinstance(e, str):
        text, e = e, parse(e)
    T = xorder(order_q)
    work = T
    for _ in range(8):
        try:
            result = _Evaluator(text, work).eval(e)
        except _ZeroDivisor as exc:
            last = exc
            work = 2 * work + 8
            continue
        if result.order >= T:
            return result.truncate(T)
        work += max(T - result.order, 2)
        last = None
    if last is not None:
        raise EvalError(last.message, last.span)
    raise EvalError(f"could not determine the expansion through q^{order_q}",
                    (0, _byte_offset(text, len(text))))


def parse_monomial(text: str) -> QMonomial:
    """Parse a qexpr that must denote a monomial, e.g. ``-1``, ``i*q2``, ``q^2/2``."""
    e = parse(text)
    m = as_monomial(e)
    if m is None:
        raise ExprSyntaxError(f"{text!r} is not a monomial", 0, "a monomial c*q^(k/2)")
    return m
