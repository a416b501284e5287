from __future__ import annotations

import json

import pytest

from logdisc import __version__
from logdisc.main import main


def run(capsys, argv: list[str]) -> tuple[int, dict, str]:
    code = main(argv)
    captured = capsys.readouterr()
    report = json.loads(captured.out) if code == 0 and captured.out else {}
    return code, report, captured.err


def test_chi(capsys, m05_file):
    code, report, _ = run(capsys, ["chi", str(m05_file)])
    assert code == 0
    assert report["command"] == "chi"
    assert report["outputs"] == {"chi": "t^2-5*t+6", "regions": 12, "bounded": 2, "ml_degree": 2}
    assert list(report["inputs"]) == [str(m05_file)]
    assert "load" in report["timings"]


def test_check(capsys, m05_file):
    code, report, _ = run(capsys, ["check", str(m05_file)])
    assert code == 0
    outputs = report["outputs"]
    assert outputs["expected_degree"] == "not applicable (special arrangement)"
    assert outputs["arrangement"]["labels"] == ["s13", "s14", "s23", "s24", "s34"]


def test_disc_on_three_points(capsys, write_json):
    path = write_json("points.json", {"d": 1, "b": [0, -1, -2], "A": [[1], [1], [1]]})
    code, report, _ = run(capsys, ["disc", str(path), "--pretty", "--positivity", "50"])
    assert code == 0
    outputs = report["outputs"]
    assert outputs["method"] == "disc_d1"
    assert outputs["total_degree"] == 2
    assert outputs["factors"][0]["text"] == "u0^2 + 4*u0*u1 + 4*u1^2 - 2*u0*u2 + 4*u1*u2 + u2^2"
    assert "positivity" in outputs


def test_member(capsys, m05_file):
    code, report, _ = run(capsys, ["member", str(m05_file), "--u=1,1,1,1,1", "--seed", "5"])
    assert code == 0
    assert report["seed"] == 5
    assert report["outputs"]["verdict"] == "outside"


def test_crit_with_negative_exponents(capsys, m05_file):
    code, report, _ = run(capsys, ["crit", str(m05_file), "--u=2,3,5,7,-1"])
    assert code == 0
    assert report["outputs"]["status"] == "complete"


def test_gram(capsys):
    code, report, _ = run(capsys, ["gram", "--u", "1,1,1,1,1"])
    assert code == 0
    assert report["outputs"]["value"] == "45"
    assert report["outputs"]["agrees"] is True


def test_m0m_deletion(capsys):
    code, report, _ = run(capsys, ["m0m", "--m", "6", "--delete", "4"])
    assert code == 0
    assert report["outputs"]["labels"] == ["s13", "s15", "s23", "s25", "s35"]
    assert report["outputs"]["ml_degree"] == 2


def test_softlimit_on_m05(capsys):
    code, report, _ = run(capsys, ["softlimit", "--m", "5", "--k", "4"])
    assert code == 0
    assert report["outputs"]["weight"] == [0, 1, 0, 1, 1]
    assert report["outputs"]["initial_form"]["vars"] == ["u0", "u1", "u2", "u3", "u4"]


def test_newton_and_initial(capsys, write_json):
    from logdisc.model.poly import poly_document
    from logdisc.moduli.m0m import m05_discriminant

    path = write_json("f.json", poly_document(m05_discriminant()))
    code, report, _ = run(capsys, ["newton", str(path)])
    assert code == 0
    assert report["outputs"]["f_vector"] == [7, 17, 18, 8]
    code, report, _ = run(capsys, ["initial", str(path), "--w=0,1,0,1,1"])
    assert code == 0
    assert report["outputs"]["w"] == ["0", "1", "0", "1", "1"]


def test_report_file(capsys, tmp_path):
    target = tmp_path / "out" / "m0m.json"
    code = main(["m0m", "--m", "5", "--out", str(target), "-q"])
    assert code == 0
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["outputs"]["m"] == 5


def test_version(capsys):
    assert main(["--version"]) == 0
    assert capsys.readouterr().out.strip() == f"logdisc {__version__}"


@pytest.mark.parametrize(
    "argv, suggestion",
    [
        (["chii", "x.json"], "chi"),
        (["gram", "--u=1,1,1,1,1", "--seeed", "3"], "--seed"),
    ],
)
def test_usage_errors_suggest_a_close_match(capsys, argv, suggestion):
    code, _, err = run(capsys, argv)
    assert code == 2
    assert f"did you mean '{suggestion}'?" in err


def test_bad_rational_is_a_usage_error(capsys):
    code, _, err = run(capsys, ["gram", "--u=1,x"])
    assert code == 2
    assert "not a rational" in err


def test_document_errors_exit_with_one(capsys, write_json):
    path = write_json("bad.json", {"d": 2, "b": [1], "A": [[1, 0], [0, 1]]})
    code, _, err = run(capsys, ["chi", str(path)])
    assert code == 1
    assert "b has 1 entries but A has 2 rows" in err


def test_softlimit_outside_the_recipes(capsys):
    code, _, err = run(capsys, ["softlimit", "--m", "7", "--k", "5"])
    assert code == 1
    assert "m = 5 and m = 6" in err
