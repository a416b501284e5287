"""Tolerances and tunables, with environment overrides."""

from __future__ import annotations

from dataclasses import dataclass, replace
import os

THREADS_ENV = "LOGDISC_THREADS"


@dataclass(frozen=True, slots=True)
class Tolerances:
    residual: float = 1e-10
    wall: float = 1e-8
    degenerate: float = 1e-8
    collision: float = 1e-6
    real: float = 1e-10
    merge: float = 1e-10

    def with_overrides(self, **overrides: float | None) -> "Tolerances":
        given = {key: value for key, value in overrides.items() if value is not None}
        return replace(self, **given)


@dataclass(frozen=True, slots=True)
class SolverSettings:
    aberth_max_iter: int = 200
    polish_steps: int = 3
    polish_digits: int = 32
    step_floor: float = 1e-14
    step_max: float = 0.1
    divergence_radius: float = 1e8
    retry_seeds: int = 3


@dataclass(frozen=True, slots=True)
class EliminationSettings:
    # Sylvester matrices at least this large go through the multi-prime path.
    modular_threshold: int = 8
    max_intermediate_terms: int = 400_000
    certify_samples: int = 3


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "").strip()
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError:
        return 1
    return max(1, value)


DEFAULT_TOLERANCES = Tolerances()
DEFAULT_SOLVER = SolverSettings()
DEFAULT_ELIMINATION = EliminationSettings()
