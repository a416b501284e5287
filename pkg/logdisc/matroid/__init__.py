"""Matroid invariants of arrangements."""
