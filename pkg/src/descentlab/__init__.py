"""Exact 2-descent tools for Pell conics, octic class fields and the curves
y^2 = x(x^2 +- 4p)."""

__version__ = "0.1.0"
