from __future__ import annotations

import hashlib

from logdisc import __version__
from logdisc.state.session import RunSession


def test_stage_seeds_are_deterministic_and_distinct():
    first = RunSession(command="crit", seed=3)
    second = RunSession(command="disc", seed=3)
    assert first.seed_for("crit") == second.seed_for("crit")
    assert first.seed_for("crit") != first.seed_for("member")
    assert first.seed_for("crit") != RunSession(command="crit", seed=4).seed_for("crit")
    assert first.rng("x").integers(0, 10**9) == second.rng("x").integers(0, 10**9)


def test_stage_timings_accumulate():
    session = RunSession(command="chi")
    with session.stage("load"):
        pass
    with session.stage("load"):
        pass
    assert set(session.timings) == {"load"}
    assert session.timings["load"] >= 0


def test_stage_records_time_when_the_body_raises():
    session = RunSession(command="chi")
    try:
        with session.stage("boom"):
            raise ValueError("boom")
    except ValueError:
        pass
    assert "boom" in session.timings


def test_report(tmp_path):
    source = tmp_path / "input.json"
    source.write_bytes(b"{}")
    session = RunSession(command="gram", seed=9)
    session.record_input(source)
    report = session.report({"value": "45"}).to_dict()
    assert report["command"] == "gram"
    assert report["tool_version"] == __version__
    assert report["seed"] == 9
    assert report["inputs"] == {str(source): hashlib.sha256(b"{}").hexdigest()}
    assert report["outputs"] == {"value": "45"}
    assert "timings" in report
    assert "timings" not in session.report({}).to_dict(include_timings=False)
