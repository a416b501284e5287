"""Exception base shared by all logdisc packages."""

from __future__ import annotations


class LogdiscError(RuntimeError):
    """Base class for domain errors; the CLI maps these to exit code 1."""
