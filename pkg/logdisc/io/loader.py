"""Document loading: JSON text -> validated domain values."""

from __future__ import annotations

from fractions import Fraction
import json
from pathlib import Path
from typing import Any, Mapping

from pydantic import BaseModel, ValidationError

from logdisc.io.documents import ArrangementDocument, DocumentError, PolyDocument
from logdisc.model.arrangement import Arrangement, make_arrangement
from logdisc.model.poly import Poly


def _location(error: dict[str, Any]) -> str:
    return "/".join(str(part) for part in error.get("loc", ())) or "<root>"


def read_json(path: str | Path) -> Any:
    source = Path(path)
    if not source.exists():
        raise DocumentError(f"File not found: {source}")
    try:
        text = source.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"Failed to read {source}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"Malformed JSON in {source}: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from exc


def _validated(model: type[BaseModel], data: Any) -> Any:
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        raise DocumentError(first.get("msg", "invalid document"), _location(first)) from exc


def parse_arrangement(data: Mapping[str, Any]) -> Arrangement:
    doc: ArrangementDocument = _validated(ArrangementDocument, data)
    try:
        return make_arrangement(
            doc.d,
            [Fraction(v) for v in doc.b],
            [[Fraction(v) for v in row] for row in doc.A],
            doc.labels,
        )
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"Unparseable rational: {exc}") from exc


def parse_poly(data: Mapping[str, Any]) -> Poly:
    doc: PolyDocument = _validated(PolyDocument, data)
    terms: dict[tuple[int, ...], Fraction] = {}
    for term in doc.terms:
        key = tuple(term.e)
        terms[key] = terms.get(key, Fraction(0)) + Fraction(term.c)
    return Poly.from_terms(tuple(doc.vars), terms)


def load_arrangement(path: str | Path) -> Arrangement:
    return parse_arrangement(read_json(path))


def load_poly(path: str | Path) -> Poly:
    return parse_poly(read_json(path))
