"""Circuit generators of the reciprocal linear space."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from logdisc.model.poly import Poly, poly_document


@dataclass(frozen=True, slots=True)
class CircuitGenerator:
    """g_T = sum_{i in T} lambda_i prod_{j in T, j != i} y_j for a (d+2)-subset T."""

    support: tuple[int, ...]
    coefficients: tuple[Fraction, ...]
    poly: Poly

    def to_dict(self, pretty: bool = False) -> dict[str, Any]:
        data: dict[str, Any] = {
            "support": list(self.support),
            "lambda": [str(c) for c in self.coefficients],
            "poly": poly_document(self.poly),
        }
        if pretty:
            data["text"] = self.poly.render()
        return data
