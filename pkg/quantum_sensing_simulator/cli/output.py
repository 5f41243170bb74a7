from __future__ import annotations
from typing import Optional, TextIO
import csv
import io
import re
import sys

from quantum_sensing_simulator.experiments.tables import Cell, Column, InvalidTable, Table
from quantum_sensing_simulator.settings.settings import Settings

FORMATS = ("csv", "table")

_pattern_header = re.compile(r"^(?P<name>[^\[\]]+)(\[(?P<unit>[^\[\]]*)\])?$")


def format_cell(value: Cell, digits: int = Settings().get()["csv_significant_digits"]) -> str:
    """Floats with `digits` significant digits; integers and text unchanged."""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.{digits}g}"
    return str(value)


def render_csv(table: Table) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([column.header for column in table.columns])
    for row in table.rows:
        writer.writerow([format_cell(value) for value in row])
    return buffer.getvalue()


def render_aligned(table: Table) -> str:
    """Fixed-width rendering with right-aligned columns."""
    cells = [[column.header for column in table.columns]]
    cells += [[format_cell(value) for value in row] for row in table.rows]
    widths = [max(len(row[index]) for row in cells) for index in range(len(table.columns))]
    lines = [" | ".join(cell.rjust(width) for cell, width in zip(row, widths)) for row in cells]
    lines.insert(1, "-+-".join("-" * width for width in widths))
    return "\n".join(lines) + "\n"


def emit_csv(table: Table, path: Optional[str] = None, format: str = "csv", stream: Optional[TextIO] = None):
    """Writes a table as CSV or as an aligned table.

    Args:
        table (Table): The table, with at least one row.
        path (Optional[str], optional): Output file. Defaults to None, which writes to `stream`.
        format (str, optional): "csv" or "table". Defaults to "csv".
        stream (Optional[TextIO], optional): Stream used without a path. Defaults to None, which is standard output.

    Raises:
        InvalidTable: If the table is empty or the format is unknown.
        OSError: If the file cannot be written.
    """
    if len(table) == 0:
        raise InvalidTable(reason="the table is empty")
    if format not in FORMATS:
        raise InvalidTable(reason=f"unknown format '{format}'")
    text = render_csv(table) if format == "csv" else render_aligned(table)
    if path is None:
        (stream if stream is not None else sys.stdout).write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as file:
        file.write(text)


def _parse_cell(text: str) -> Cell:
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def parse_csv(text: str) -> Table:
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows:
        raise InvalidTable(reason="no header row")
    columns = []
    for header in rows[0]:
        match = _pattern_header.match(header)
        if match is None:
            raise InvalidTable(reason=f"malformed column header '{header}'")
        columns.append(Column(match["name"], match["unit"] or ""))
    table = Table(columns=tuple(columns))
    for row in rows[1:]:
        table.add_row(*(_parse_cell(cell) for cell in row))
    return table


def read_csv(path: str) -> Table:
    """Reads a table written by emit_csv."""
    with open(path, encoding="utf-8", newline="") as file:
        return parse_csv(file.read())
