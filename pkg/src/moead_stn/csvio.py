"""Deterministic CSV writing helpers.

Floats are serialized with repr (shortest round-trip form), missing
values as empty cells, and rows joined with LF so repeated runs yield
byte-identical files.
"""

from __future__ import annotations

import math
import os
from typing import Iterable, Sequence


def format_value(value) -> str:
    """Serialize one cell deterministically; None/NaN become empty."""
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            return ""
        # float subclasses (numpy scalars) repr with a type wrapper
        return repr(float(value))
    if isinstance(value, (int,)):
        return str(value)
    return str(value)


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    """Write a CSV file with a header row and LF line endings."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_value(v) for v in row))
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")


def read_csv(path: str) -> tuple[list[str], list[list[str]]]:
    """Read a CSV written by write_csv; returns (header, rows)."""
    with open(path, "r", newline="\n") as handle:
        lines = [line.rstrip("\n") for line in handle if line.strip() != ""]
    if not lines:
        raise ValueError(f"empty CSV file: {path}")
    header = lines[0].split(",")
    return header, [line.split(",") for line in lines[1:]]
