"""Logarithmic discriminant computations."""
