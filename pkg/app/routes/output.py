"""
Command output helpers.

This module renders command results as plain text, CSV or JSON on stdout.
Plain output prints numbers with the configured significant digits; a single
value prints alone on its line.
"""

import csv
import json
import math
import sys
from typing import Any, Iterable, Sequence

from app.config import settings

FORMATS = ("plain", "csv", "json")


def format_number(value: Any) -> str:
    """Render a float with OUTPUT_DIGITS significant digits."""
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        return str(value)
    if math.isnan(value):
        return "nan"
    return f"{value:.{settings.OUTPUT_DIGITS}g}"


def emit_value(value: float, fmt: str, name: str = "value") -> None:
    """Print one value."""
    emit_table([name], [[value]], fmt)


def emit_text(text: str, fmt: str, name: str = "result") -> None:
    """Print one text result (an expression, a class name)."""
    if fmt == "json":
        print(json.dumps({name: text}))
    elif fmt == "csv":
        emit_table([name], [[text]], fmt)
    else:
        print(text)


def emit_table(headers: Sequence[str], rows: Iterable[Sequence[Any]], fmt: str) -> None:
    """
    Print rows under the given headers.

    Args:
        headers: Column names
        rows: Row values, numbers or text
        fmt: plain, csv or json
    """
    rows = [list(row) for row in rows]
    if fmt == "json":
        records = [
            {h: (None if isinstance(v, float) and math.isnan(v) else v) for h, v in zip(headers, row)}
            for row in rows
        ]
        print(json.dumps(records))
        return
    if fmt == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(headers)
        for row in rows:
            writer.writerow([_csv_cell(v) for v in row])
        return
    if len(rows) == 1 and len(rows[0]) == 1:
        print(format_number(rows[0][0]))
        return
    for row in rows:
        print(" ".join(format_number(v) for v in row))


def _csv_cell(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)

