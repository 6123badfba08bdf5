"""Numerical toolkit for Zagier L-series, theta-multiplier sums and Voronoi formulas."""

__version__ = "0.1.0"
