"""Flat-file output of sweep results.

CSV: fixed header ``axis_value,R,T,sum,defect``, 17 significant digits, ``,``
delimiter, LF line endings. JSON mirrors the rows plus metadata. Both are
byte-identical for identical results.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Literal

from ..exceptions import EmitError
from ..scattering.constants import CSV_HEADER
from ..utils.logger import get_logger
from .runner import SweepResult

logger = get_logger(__name__)

OutputFormat = Literal["csv", "json"]


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def to_csv(result: SweepResult) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, delimiter=",", lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in result.rows:
        writer.writerow(
            [
                _fmt(row.axis_value),
                _fmt(row.reflection),
                _fmt(row.transmission),
                _fmt(row.total),
                _fmt(row.defect),
            ]
        )
    return buffer.getvalue()


def to_json(result: SweepResult) -> str:
    return result.model_dump_json(indent=2, by_alias=True) + "\n"


def emit(result: SweepResult, output_format: OutputFormat, path: Path) -> Path:
    """Write ``result`` to ``path`` in ``output_format``.

    :raises EmitError: on any I/O failure, with the offending path
    """
    path = Path(path)
    text = to_csv(result) if output_format == "csv" else to_json(result)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    except OSError as exc:
        raise EmitError(f"Cannot write {output_format} output to {path}: {exc}", path=path) from exc
    logger.info("Wrote %d rows to %s", len(result.rows), path)
    return path


def load_json(path: Path) -> SweepResult:
    """Read back a JSON result written by :func:`emit`."""
    path = Path(path)
    try:
        return SweepResult.model_validate_json(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise EmitError(f"Cannot read {path}: {exc}", path=path) from exc
