"""Discriminant results and their factors."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from logdisc.model.poly import Poly, poly_document


class Method(str, Enum):
    DISC_D1 = "disc_d1"
    RES_D1 = "res_d1"
    ELIMINATION = "elimination"


@dataclass(slots=True)
class Factor:
    poly: Poly
    multiplicity: int = 1
    certified: bool = False
    note: str | None = None

    @property
    def degree(self) -> int:
        return self.poly.degree()

    def to_dict(self, pretty: bool = False) -> dict[str, Any]:
        data: dict[str, Any] = {
            "poly": poly_document(self.poly),
            "multiplicity": self.multiplicity,
            "certified": self.certified,
            "degree": self.degree,
        }
        if self.note:
            data["note"] = self.note
        if pretty:
            data["text"] = self.poly.render()
        return data


@dataclass(slots=True)
class LedgerEntry:
    """A factor divided out during elimination, with the step that produced it."""

    poly: Poly
    multiplicity: int
    reason: str

    def to_dict(self, pretty: bool = False) -> dict[str, Any]:
        data: dict[str, Any] = {
            "poly": poly_document(self.poly),
            "multiplicity": self.multiplicity,
            "reason": self.reason,
        }
        if pretty:
            data["text"] = self.poly.render()
        return data


@dataclass(slots=True)
class DiscriminantResult:
    factors: list[Factor]
    method: Method
    leftover: Poly | None = None
    expected_degree: int | None = None
    notes: list[str] = field(default_factory=list)
    partial: bool = False
    ledger: list[LedgerEntry] = field(default_factory=list)

    @property
    def total_degree(self) -> int:
        return sum(f.degree * f.multiplicity for f in self.factors)

    @property
    def certified_factors(self) -> list[Poly]:
        return [f.poly for f in self.factors if f.certified]

    def product(self) -> Poly | None:
        if not self.factors:
            return None
        total = self.factors[0].poly ** self.factors[0].multiplicity
        for f in self.factors[1:]:
            total = total * f.poly**f.multiplicity
        return total

    def to_dict(self, pretty: bool = False) -> dict[str, Any]:
        return {
            "method": self.method.value,
            "factors": [f.to_dict(pretty) for f in self.factors],
            "total_degree": self.total_degree,
            "expected_degree": self.expected_degree,
            "leftover": poly_document(self.leftover) if self.leftover is not None else None,
            "partial": self.partial,
            "notes": list(self.notes),
            "ledger": [entry.to_dict(pretty) for entry in self.ledger],
        }
