"""Reciprocal linear spaces and Newton polytopes."""
