"""Records produced by the critical-point solvers."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any

from logdisc.model.arrangement import Arrangement
from logdisc.model.poly import Poly


class PointStatus(str, Enum):
    CERTIFIED = "certified"
    SUSPECT = "suspect"


class Verdict(str, Enum):
    OUTSIDE = "outside"
    NEAR_DISCRIMINANT = "near_discriminant"
    INCOMPLETE = "incomplete"


@dataclass(frozen=True, slots=True)
class LikelihoodSystem:
    """Cleared critical equations; u is symbolic (u0..un) when `u` is None."""

    arr: Arrangement
    u: tuple[Fraction, ...] | None
    cleared_equations: tuple[Poly, ...]
    hessian_numerator: Poly


@dataclass(slots=True)
class CriticalPoint:
    x: tuple[complex, ...]
    residual: float
    hessdet: complex
    relative_hessdet: float
    min_wall_distance: float
    status: PointStatus

    def to_dict(self) -> dict[str, Any]:
        return {
            "x": [[z.real, z.imag] for z in self.x],
            "residual": self.residual,
            "hessdet": [self.hessdet.real, self.hessdet.imag],
            "relative_hessdet": self.relative_hessdet,
            "min_wall_distance": self.min_wall_distance,
            "status": self.status.value,
        }


@dataclass(slots=True)
class CriticalSolutions:
    points: list[CriticalPoint]
    count_expected: int
    method: str
    seed: int
    warnings: list[str] = field(default_factory=list)
    failed_paths: int = 0

    @property
    def certified(self) -> list[CriticalPoint]:
        return [p for p in self.points if p.status is PointStatus.CERTIFIED]

    @property
    def suspect(self) -> list[CriticalPoint]:
        return [p for p in self.points if p.status is PointStatus.SUSPECT]

    @property
    def status(self) -> str:
        found = len(self.certified)
        if found == self.count_expected:
            return "complete"
        return f"incomplete(found {found} of {self.count_expected})"

    @property
    def residuals(self) -> list[float]:
        return [p.residual for p in self.points]

    @property
    def hessdets(self) -> list[complex]:
        return [p.hessdet for p in self.points]

    def to_dict(self) -> dict[str, Any]:
        return {
            "status": self.status,
            "count_expected": self.count_expected,
            "count_certified": len(self.certified),
            "method": self.method,
            "seed": self.seed,
            "failed_paths": self.failed_paths,
            "points": [p.to_dict() for p in self.points],
            "warnings": list(self.warnings),
        }


@dataclass(slots=True)
class MembershipResult:
    verdict: Verdict
    reason: str | None
    solutions: CriticalSolutions
    seeds_used: list[int] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "reason": self.reason,
            "seeds_used": list(self.seeds_used),
            "solutions": self.solutions.to_dict(),
        }


@dataclass(slots=True)
class VarchenkoReport:
    passed: bool
    count: int
    expected: int
    max_imag: float
    min_relative_hessdet: float
    solutions: CriticalSolutions
    failures: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "count": self.count,
            "expected": self.expected,
            "max_imag": self.max_imag,
            "min_relative_hessdet": self.min_relative_hessdet,
            "failures": list(self.failures),
            "solutions": self.solutions.to_dict(),
        }
