"""Exact localization computations on Hilbert schemes of points in the plane."""

__version__ = "0.1.0"
