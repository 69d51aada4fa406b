"""Input parsing: inline lists, summary triples and CSV columns."""

from __future__ import annotations

import csv
import math
from pathlib import Path

from .effect_sizes import SampleSummary
from .errors import EffDiffError


class ParseError(EffDiffError, ValueError):
    """Malformed numeric input; the message carries the row/column position."""


def parse_number(text: str, where: str = "") -> float:
    try:
        value = float(text.strip())
    except ValueError:
        raise ParseError(f"not a number: {text!r}{where}") from None
    if not math.isfinite(value):
        raise ParseError(f"non-finite value {text!r}{where}")
    return value


def parse_inline(text: str) -> list[float]:
    """'0,1,2' or '0 1 2' -> [0.0, 1.0, 2.0]."""
    parts = [p for p in text.replace(",", " ").split()]
    if not parts:
        raise ParseError("empty value list")
    return [parse_number(p, f" (item {i + 1})") for i, p in enumerate(parts)]


def parse_summary(text: str) -> SampleSummary:
    """'mean,variance,n' -> SampleSummary."""
    vals = parse_inline(text)
    if len(vals) != 3:
        raise ParseError(f"summary needs mean,variance,n; got {text!r}")
    mean, var, n = vals
    if n != int(n) or n < 2:
        raise ParseError(f"summary n must be an integer >= 2; got {n}")
    if var < 0:
        raise ParseError(f"summary variance must be >= 0; got {var}")
    return SampleSummary(mean=mean, variance=var, n=int(n))


def _is_header(row: list[str]) -> bool:
    for cell in row:
        try:
            float(cell)
        except ValueError:
            return True
    return False


def read_table(path: str | Path) -> tuple[list[str] | None, list[list[str]]]:
    """Rows of a comma-separated UTF-8 file; the first row is a header if any cell is non-numeric."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh)]
    rows = [r for r in rows if any(c.strip() for c in r)]
    if not rows:
        raise ParseError(f"{path}: no data rows")
    header = rows[0] if _is_header(rows[0]) else None
    return header, rows[1:] if header is not None else rows


def _column_index(spec: str, header: list[str] | None) -> int:
    if header is not None and spec in header:
        return header.index(spec)
    try:
        idx = int(spec)
    except ValueError:
        raise ParseError(f"unknown column {spec!r}") from None
    if idx < 0:
        raise ParseError(f"column index must be >= 0, got {idx}")
    return idx


def read_column(path: str | Path, column: str) -> list[float]:
    """Numeric values of one column (name or 0-based index). Empty cells are rejected."""
    header, rows = read_table(path)
    col = _column_index(column, header)
    first = 2 if header is not None else 1
    out = []
    for lineno, row in enumerate(rows, start=first):
        if col >= len(row) or not row[col].strip():
            raise ParseError(f"{path}: missing value at row {lineno}, column {col + 1}")
        out.append(parse_number(row[col], f" at row {lineno}, column {col + 1}"))
    return out


def read_groups(path: str | Path, value_column: str, group_column: str, groups: list[str]) -> list[list[float]]:
    """Split a long-format file into the listed groups, in order."""
    header, rows = read_table(path)
    vcol = _column_index(value_column, header)
    gcol = _column_index(group_column, header)
    first = 2 if header is not None else 1
    found: dict[str, list[float]] = {g: [] for g in groups}
    for lineno, row in enumerate(rows, start=first):
        if max(vcol, gcol) >= len(row):
            raise ParseError(f"{path}: missing value at row {lineno}")
        label = row[gcol].strip()
        if label not in found:
            continue
        if not row[vcol].strip():
            raise ParseError(f"{path}: missing value at row {lineno}, column {vcol + 1}")
        found[label].append(parse_number(row[vcol], f" at row {lineno}, column {vcol + 1}"))
    for g, vals in found.items():
        if not vals:
            raise ParseError(f"{path}: group {g!r} has no rows")
    return [found[g] for g in groups]


def write_columns(path: str | Path, columns: dict[str, list[float]]) -> None:
    """Write equal-length columns with a header row; floats use repr so they re-read exactly."""
    names = list(columns)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(names)
        for row in zip(*(columns[n] for n in names)):
            w.writerow([repr(float(v)) for v in row])
