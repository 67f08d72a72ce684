"""CSV and JSON serialization of datasets.

CSV floats are written with 17 significant digits and JSON floats with the
shortest repr that parses back to the same double, so every value
round-trips exactly. No timestamps or other run-dependent data are added,
so identical inputs give byte-identical output.
"""

import csv
import io
import json
import logging
import sys
from enum import Enum
from pathlib import Path
from typing import Any, Literal, TextIO

import numpy as np
from pydantic import BaseModel

from ..errors import DomainError, OutputError
from ..schemas import Dataset

logger = logging.getLogger(__name__)

OutputFormat = Literal["csv", "json"]


def format_number(value: float) -> str:
    """17 significant digits."""
    return format(float(value), ".17g")


def _flatten(record: dict[str, Any], prefix: str = "") -> dict[str, Any]:
    flat: dict[str, Any] = {}
    for key, value in record.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, f"{name}."))
        else:
            flat[name] = value
    return flat


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_number(value)
    return str(value)


def _json_default(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    raise TypeError(f"cannot serialize {type(value).__name__} as JSON")


def _dumps(value: Any) -> str:
    try:
        return json.dumps(value, indent=2, allow_nan=False, default=_json_default) + "\n"
    except ValueError as e:
        raise DomainError(f"cannot serialize non-finite value as JSON: {e}") from e


def to_csv(dataset: Dataset) -> str:
    """Header row plus one line per record, columns in dataset order."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(dataset.columns)
    for record in dataset.rows:
        flat = _flatten(record)
        writer.writerow([_csv_cell(flat.get(column)) for column in dataset.columns])
    return buffer.getvalue()


def to_json(dataset: Dataset) -> str:
    """Array of records."""
    return _dumps(dataset.rows)


def summary_to_json(summary: dict[str, Any]) -> str:
    return _dumps(summary)


def _write(text: str, path: Path | None, stream: TextIO | None) -> None:
    if path is None:
        (stream or sys.stdout).write(text)
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    except OSError as e:
        raise OutputError(f"cannot write {path}: {e.strerror or e}") from e
    logger.info(f"Wrote {path}")


def emit(dataset: Dataset, fmt: OutputFormat, path: Path | None = None, stream: TextIO | None = None) -> None:
    """Write ``dataset`` as CSV or JSON to ``path`` (or ``stream``/stdout)."""
    if fmt == "csv":
        text = to_csv(dataset)
    elif fmt == "json":
        text = to_json(dataset)
    else:
        raise DomainError(f"unknown output format {fmt!r}")
    _write(text, path, stream)


def emit_summary(summary: dict[str, Any], path: Path | None = None, stream: TextIO | None = None) -> None:
    """Write a JSON summary next to ``path`` (``<path>.summary.json``) or after the data on the stream."""
    text = summary_to_json(summary)
    if path is None:
        (stream or sys.stdout).write("\n" + text)
        return
    _write(text, path.with_name(path.name + ".summary.json"), None)
