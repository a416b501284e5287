"""Gram matrix of five particles and its principal minors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import logging
from typing import Any, Sequence

from logdisc.algebra import linalg
from logdisc.model.poly import to_fraction
from logdisc.moduli.m0m import ModuliError, m05_discriminant

logger = logging.getLogger(__name__)


@dataclass(slots=True)
class GramReport:
    value: Fraction
    minors: list[Fraction]
    discriminant: Fraction

    @property
    def agrees(self) -> bool:
        return all(minor == self.discriminant for minor in self.minors)

    def to_dict(self) -> dict[str, Any]:
        return {
            "value": str(self.value),
            "minors": [str(v) for v in self.minors],
            "discriminant": str(self.discriminant),
            "agrees": self.agrees,
        }


def gram_matrix(u: Sequence[Any]) -> list[list[Fraction]]:
    """5x5 symmetric matrix with zero diagonal and zero row sums, from (s13, s14, s23, s24, s34)."""
    if len(u) != 5:
        raise ModuliError(f"expected (s13, s14, s23, s24, s34), got {len(u)} values")
    s13, s14, s23, s24, s34 = (to_fraction(v) for v in u)
    s = {
        (1, 2): -(s13 + s14 + s23 + s24 + s34),
        (1, 3): s13,
        (1, 4): s14,
        (2, 3): s23,
        (2, 4): s24,
        (3, 4): s34,
    }
    for i in range(1, 5):
        s[(i, 5)] = -sum((s[(min(i, j), max(i, j))] for j in range(1, 5) if j != i), Fraction(0))
    matrix = [[Fraction(0)] * 5 for _ in range(5)]
    for (i, j), value in s.items():
        matrix[i - 1][j - 1] = matrix[j - 1][i - 1] = value
    return matrix


def gram_minor_check(u: Sequence[Any]) -> GramReport:
    matrix = gram_matrix(u)
    minors = []
    for k in range(5):
        keep = [i for i in range(5) if i != k]
        minors.append(linalg.det(linalg.submatrix(matrix, keep, keep)))
    discriminant = m05_discriminant().evaluate([to_fraction(v) for v in u])
    report = GramReport(value=minors[0], minors=minors, discriminant=discriminant)
    if not report.agrees:
        logger.warning("Gram minors %s differ from the discriminant value %s", [str(m) for m in minors], discriminant)
    return report
