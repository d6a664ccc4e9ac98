from __future__ import annotations
import typing as ty
import csv
import io
import math
from pathlib import Path


CSV_DIGITS = 12


def format_value(value: ty.Any) -> str:
    """Renders a table cell; floats get a fixed number of significant digits so
    output does not depend on locale or repr changes"""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return f"{value:.{CSV_DIGITS}g}"
    if hasattr(value, "item"):  # numpy scalars
        return format_value(value.item())
    return str(value)


def render_csv(header: ty.Sequence[str], rows: ty.Iterable[ty.Sequence[ty.Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(v) for v in row])
    return buf.getvalue()


def write_csv(
    header: ty.Sequence[str],
    rows: ty.Iterable[ty.Sequence[ty.Any]],
    out: ty.Optional[Path] = None,
) -> str:
    """Renders the rows as CSV and writes them to ``out`` if given

    Returns
    -------
    str
        the rendered text
    """
    text = render_csv(header, rows)
    if out is not None:
        with open(out, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    return text
