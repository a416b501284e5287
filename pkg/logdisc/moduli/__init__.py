"""Moduli spaces M0,m and their scattering data."""
