"""Per-run session state: seed substreams, stage timings, the run report."""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field
import hashlib
import logging
from pathlib import Path
import time
from typing import Any, Iterator
import zlib

import numpy as np

from logdisc import __version__

logger = logging.getLogger(__name__)


@dataclass(slots=True)
class RunReport:
    command: str
    inputs: dict[str, str]
    outputs: dict[str, Any]
    timings: dict[str, float]
    seed: int
    tool_version: str = __version__

    def to_dict(self, include_timings: bool = True) -> dict[str, Any]:
        data: dict[str, Any] = {
            "command": self.command,
            "tool_version": self.tool_version,
            "seed": self.seed,
            "inputs": dict(self.inputs),
            "outputs": self.outputs,
        }
        if include_timings:
            data["timings"] = {stage: round(seconds, 6) for stage, seconds in self.timings.items()}
        return data


@dataclass(slots=True)
class RunSession:
    command: str
    seed: int = 0
    inputs: dict[str, str] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)

    def record_input(self, path: str | Path) -> None:
        source = Path(path)
        self.inputs[str(source)] = hashlib.sha256(source.read_bytes()).hexdigest()

    def seed_for(self, stage: str) -> int:
        """Deterministic integer seed of the named substream."""
        sequence = np.random.SeedSequence([self.seed, zlib.crc32(stage.encode("utf-8"))])
        return int(sequence.generate_state(1)[0])

    def rng(self, stage: str) -> np.random.Generator:
        return np.random.default_rng(self.seed_for(stage))

    @contextmanager
    def stage(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            elapsed = time.perf_counter() - start
            self.timings[name] = self.timings.get(name, 0.0) + elapsed
            logger.debug("stage %s took %.3fs", name, elapsed)

    def report(self, outputs: dict[str, Any]) -> RunReport:
        return RunReport(
            command=self.command,
            inputs=dict(self.inputs),
            outputs=outputs,
            timings=dict(self.timings),
            seed=self.seed,
        )
