"""JSON document schemas for arrangements and polynomials."""

from __future__ import annotations

from fractions import Fraction
import re
from typing import Annotated

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, model_validator

from logdisc.errors import LogdiscError

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$")
_VARIABLE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class DocumentError(LogdiscError):
    """Raised when a document cannot be parsed; `location` points at the offending entry."""

    def __init__(self, message: str, location: str | None = None) -> None:
        super().__init__(f"{message} at {location}" if location else message)
        self.location = location


def _checked_rational(value: object) -> str:
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, int):
        return str(value)
    if not isinstance(value, str) or not _RATIONAL.match(value):
        raise ValueError(f"expected an integer or 'p/q' string, got {value!r}")
    text = value.replace(" ", "")
    try:
        Fraction(text)
    except ZeroDivisionError as exc:
        raise ValueError(f"zero denominator in {text!r}") from exc
    return text


Rational = Annotated[str, BeforeValidator(_checked_rational)]


class ArrangementDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    d: int = Field(gt=0)
    b: list[Rational]
    A: list[list[Rational]]
    labels: list[str] | None = None

    @model_validator(mode="after")
    def _shapes(self) -> "ArrangementDocument":
        if len(self.b) != len(self.A):
            raise ValueError(f"b has {len(self.b)} entries but A has {len(self.A)} rows")
        for i, row in enumerate(self.A):
            if len(row) != self.d:
                raise ValueError(f"row {i} of A has {len(row)} entries, expected {self.d}")
        if self.labels is not None and len(self.labels) != len(self.b):
            raise ValueError(f"expected {len(self.b)} labels, got {len(self.labels)}")
        return self


class TermDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    c: Rational
    e: list[Annotated[int, Field(ge=0)]]


class PolyDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    vars: list[str]
    terms: list[TermDocument]

    @model_validator(mode="after")
    def _arity(self) -> "PolyDocument":
        for name in self.vars:
            if not _VARIABLE.match(name):
                raise ValueError(f"invalid variable name {name!r}")
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("variable names must be distinct")
        for i, term in enumerate(self.terms):
            if len(term.e) != len(self.vars):
                raise ValueError(f"term {i} has {len(term.e)} exponents, expected {len(self.vars)}")
        return self
