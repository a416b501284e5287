"""Logarithmic discriminants of affine hyperplane arrangements."""

__version__ = "0.1.0"
