"""Exception hierarchy shared by every qseries module."""


class QSeriesError(Exception):
    """Base class for all errors raised by the library."""


class ZeroSeries(QSeriesError, ZeroDivisionError):
    """Inversion of a series with no nonzero coefficient below its order."""


class InsufficientOrder(QSeriesError):
    """A coefficient was requested beyond the known truncation order."""


class NonTerminatingProduct(QSeriesError):
    """An infinite q-Pochhammer product whose factors never approach 1."""


class NonTerminatingSeries(QSeriesError):
    """A hypergeometric sum that neither terminates nor converges formally."""


class DivisionByZeroTerm(QSeriesError, ZeroDivisionError):
    """A lower parameter makes a denominator factor vanish inside the summation range."""


class DomainError(QSeriesError, ValueError):
    """An argument outside the mathematical domain of an operation."""
