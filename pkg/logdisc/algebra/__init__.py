"""Exact polynomial kernel: linear algebra, resultants, discriminants."""
