"""Locale-independent CSV/JSON output."""

import csv
import json
import math
import sys
from collections.abc import Iterable, Iterator, Sequence
from contextlib import contextmanager
from pathlib import Path
from typing import TextIO

from pydantic import BaseModel

from dynmaps.config import settings


def format_number(value: float, digits: int | None = None) -> str:
    """``.{digits}g`` with inf/-inf/nan tokens and no negative zero."""
    digits = settings.significant_digits if digits is None else digits
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    text = format(value, f".{digits}g")
    if text == "-0":
        return "0"
    return text


def round_significant(value: float, digits: int | None = None) -> float:
    digits = settings.significant_digits if digits is None else digits
    if not math.isfinite(value):
        return value
    return float(format(value, f".{digits}g")) + 0.0


def round_nested(obj, digits: int | None = None):
    """Round every float in nested lists/dicts to ``digits`` significant digits."""
    if isinstance(obj, float):
        return round_significant(obj, digits)
    if isinstance(obj, list):
        return [round_nested(v, digits) for v in obj]
    if isinstance(obj, dict):
        return {k: round_nested(v, digits) for k, v in obj.items()}
    return obj


@contextmanager
def open_output(path: str | Path | None) -> Iterator[TextIO]:
    """Yield stdout when path is None or "-", else a UTF-8 file opened for writing."""
    if path is None or str(path) == "-":
        yield sys.stdout
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        yield fh


def write_csv(stream: TextIO, header: Sequence[str], rows: Iterable[Sequence]) -> int:
    """Write header and rows with LF endings; floats go through format_number."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    count = 0
    for row in rows:
        writer.writerow([format_number(v) if isinstance(v, float) else v for v in row])
        count += 1
    return count


class DecompositionReport(BaseModel):
    """JSON report of one canonical decomposition."""

    omega_t: float
    a1: float
    a2: float
    dim: int
    matrix: list
    eigenvalues: list[float]
    operators: list
    classification: str
    negativity: float

    def to_json(self) -> str:
        return json.dumps(round_nested(self.model_dump()), indent=2) + "\n"
