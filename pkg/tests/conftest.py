from __future__ import annotations

import json
import logging
from pathlib import Path

import numpy as np
import pytest

from logdisc.io.writer import arrangement_document
from logdisc.matroid.validate import sample_generic_arrangement
from logdisc.model.arrangement import Arrangement, make_arrangement, simplex_arrangement
from logdisc.moduli.m0m import m0m_arrangement


def pytest_addoption(parser: pytest.Parser) -> None:
    parser.addoption("--runslow", action="store_true", default=False, help="run slow reproductions")


def pytest_collection_modifyitems(config: pytest.Config, items: list[pytest.Item]) -> None:
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def restore_logging():
    """The CLI installs its own handler on the package logger; undo it between tests."""
    yield
    logger = logging.getLogger("logdisc")
    logger.handlers.clear()
    logger.propagate = True
    logger.setLevel(logging.NOTSET)


@pytest.fixture
def m05() -> Arrangement:
    arr, _ = m0m_arrangement(5)
    return arr


@pytest.fixture
def simplex2() -> Arrangement:
    return simplex_arrangement(2)


@pytest.fixture
def reducible_six_planes() -> Arrangement:
    """Six planes in 3-space with two quadric components and a linear codim-2 one."""
    b = [1, 2, 1, 0, 0, 0]
    A = [
        [1, 1, 0],
        [1, "3/2", 0],
        [2, "3/2", 0],
        [1, 0, 1],
        [0, 1, 1],
        [1, 1, 2],
    ]
    return make_arrangement(3, b, A)


@pytest.fixture
def generic_lines() -> Arrangement:
    return sample_generic_arrangement(2, 5, np.random.default_rng(7))


@pytest.fixture
def write_json(tmp_path: Path):
    def write(name: str, payload: object) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return path

    return write


@pytest.fixture
def m05_file(m05: Arrangement, write_json) -> Path:
    return write_json("m05.json", arrangement_document(m05))
