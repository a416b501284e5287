"""Floating-point solvers for the likelihood equations."""
