"""Exact and numerical tools for Lie bialgebras, r-matrices and O-operators."""

__version__ = "0.1.0"
