"""Report and document writing."""

from __future__ import annotations

import json
import os
from pathlib import Path
import sys
import tempfile
from typing import Any, TextIO

from logdisc.errors import LogdiscError
from logdisc.model.arrangement import Arrangement


class ReportWriteError(LogdiscError):
    """Raised when a report cannot be written."""


def arrangement_document(arr: Arrangement) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "d": arr.d,
        "b": [str(v) for v in arr.b],
        "A": [[str(v) for v in row] for row in arr.A],
    }
    if arr.labels is not None:
        doc["labels"] = list(arr.labels)
    return doc


def dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def write_report(payload: Any, output: str | Path | None = None, stream: TextIO | None = None) -> None:
    """JSON to `output` (atomically) or to stdout."""
    text = dumps(payload)
    if output is None:
        (stream or sys.stdout).write(text)
        return
    try:
        _write_text_atomically(text, Path(output))
    except OSError as exc:
        raise ReportWriteError(f"Failed to write report: {output}") from exc


def _write_text_atomically(text: str, output: Path) -> None:
    output.parent.mkdir(parents=True, exist_ok=True)
    fd, temp_path = tempfile.mkstemp(
        prefix=f".{output.stem}_",
        suffix=".json",
        dir=str(output.parent),
    )
    os.close(fd)

    try:
        with open(temp_path, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(temp_path, output)
    finally:
        if os.path.exists(temp_path):
            os.remove(temp_path)
