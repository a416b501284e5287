from __future__ import annotations

from fractions import Fraction
import json

import pytest

from logdisc.io.documents import DocumentError
from logdisc.io.loader import load_arrangement, load_poly, parse_arrangement, parse_poly
from logdisc.io.writer import arrangement_document, write_report
from logdisc.model.arrangement import ArrangementError
from logdisc.model.poly import Poly, poly_document
from logdisc.moduli.m0m import m05_discriminant


def test_arrangement_document_survives_loading(m05, m05_file):
    loaded = load_arrangement(m05_file)
    assert loaded == m05
    assert loaded.labels == ("s13", "s14", "s23", "s24", "s34")
    assert arrangement_document(loaded)["b"] == ["0", "0", "-1", "-1", "0"]


def test_rational_strings_and_integers():
    arr = parse_arrangement({"d": 1, "b": [0, "-1/2", " 3 / 4 "], "A": [[1], ["2"], ["-1"]]})
    assert arr.b == (Fraction(0), Fraction(-1, 2), Fraction(3, 4))
    assert arr.A[1] == (Fraction(2),)


@pytest.mark.parametrize(
    "data, message, location",
    [
        ({"d": 1, "b": [0, 1.5], "A": [[1], [1]]}, "expected an integer or 'p/q' string", "b/1"),
        ({"d": 1, "b": [0, True], "A": [[1], [1]]}, "booleans", "b/1"),
        ({"d": 1, "b": [0, "1/0"], "A": [[1], [1]]}, "zero denominator", "b/1"),
        ({"d": 0, "b": [0], "A": [[]]}, "greater than 0", "d"),
        ({"d": 1, "b": [0], "A": [[1]], "extra": 1}, "Extra inputs", "extra"),
        ({"d": 2, "b": [0], "A": [[1, 0], [0, 1]]}, "b has 1 entries but A has 2 rows", "<root>"),
        ({"d": 2, "b": [0, 1], "A": [[1, 0], [0]]}, "row 1 of A has 1 entries", "<root>"),
        ({"d": 1, "b": [0, 1], "A": [[1], [1]], "labels": ["a"]}, "expected 2 labels", "<root>"),
    ],
)
def test_arrangement_document_errors(data, message, location):
    with pytest.raises(DocumentError, match=message) as info:
        parse_arrangement(data)
    assert info.value.location == location


def test_invalid_arrangement_is_reported_by_the_model():
    with pytest.raises(ArrangementError, match="repeated hyperplane 0,1"):
        parse_arrangement({"d": 1, "b": [1, 2, 0], "A": [[1], [2], [1]]})


def test_poly_document_survives_loading(write_json):
    f = m05_discriminant()
    path = write_json("f.json", poly_document(f))
    assert load_poly(path) == f


def test_poly_terms_are_summed():
    f = parse_poly({"vars": ["a", "b"], "terms": [{"c": "1/2", "e": [1, 0]}, {"c": "1/2", "e": [1, 0]}, {"c": -3, "e": [0, 2]}]})
    a, b = (Poly.variable(n, ("a", "b")) for n in ("a", "b"))
    assert f == a - b * b * 3


@pytest.mark.parametrize(
    "data, message",
    [
        ({"vars": ["1x"], "terms": []}, "invalid variable name"),
        ({"vars": ["a", "a"], "terms": []}, "distinct"),
        ({"vars": ["a"], "terms": [{"c": 1, "e": [1, 2]}]}, "term 0 has 2 exponents"),
        ({"vars": ["a"], "terms": [{"c": 1, "e": [-1]}]}, "greater than or equal to 0"),
    ],
)
def test_poly_document_errors(data, message):
    with pytest.raises(DocumentError, match=message):
        parse_poly(data)


def test_missing_and_malformed_files(tmp_path):
    with pytest.raises(DocumentError, match="File not found"):
        load_arrangement(tmp_path / "absent.json")
    broken = tmp_path / "broken.json"
    broken.write_text('{"d": 1,\n "b": [0', encoding="utf-8")
    with pytest.raises(DocumentError, match="Malformed JSON") as info:
        load_arrangement(broken)
    assert info.value.location.startswith("line 2")


def test_report_goes_to_the_stream(capsys):
    write_report({"value": "45"})
    assert json.loads(capsys.readouterr().out) == {"value": "45"}


def test_report_is_written_atomically(tmp_path):
    target = tmp_path / "nested" / "report.json"
    write_report({"first": 1}, target)
    write_report({"second": 2}, target)
    assert json.loads(target.read_text(encoding="utf-8")) == {"second": 2}
    assert [p.name for p in target.parent.iterdir()] == ["report.json"]
