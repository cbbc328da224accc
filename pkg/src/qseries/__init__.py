"""Exact q-series workbench for a little q-Jacobi congruence and overpartitions."""

__version__ = "0.1.0"

from .gaussrat import GaussRat, I
from .series import XSeries, monomial, one, zero, xorder

__all__ = ["GaussRat", "I", "XSeries", "monomial", "one", "zero", "xorder", "__version__"]
