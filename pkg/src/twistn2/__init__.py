"""Exact-arithmetic verification lab for intermediate-series modules over
the twisted N=2 superconformal algebra."""

__version__ = "0.1.0"
