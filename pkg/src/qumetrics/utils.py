from numbers import Integral
from numbers import Real
from qumetrics.errors import ConfigurationError

import csv
import pathlib


def format_float(value):
    """17 significant digits: enough to read back the same double."""
    return format(float(value), ".17g")


def format_cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, Integral):
        return str(int(value))
    if isinstance(value, Real):
        return format_float(value)
    return str(value)


def _parse_list(text, convert, what):
    if isinstance(text, (list, tuple)):
        items = list(text)
    else:
        items = [item.strip() for item in str(text).split(",")]
    if not items or any(item == "" for item in items):
        raise ConfigurationError(
            f"{what}: expected a comma separated list, got {text!r}"
        )
    try:
        return tuple(convert(item) for item in items)
    except (TypeError, ValueError):
        raise ConfigurationError(f"{what}: cannot parse {text!r}") from None


def parse_float_list(text, what="value"):
    """Parse '0.25,0.5' into (0.25, 0.5)."""
    return _parse_list(text, float, what)


def parse_int_list(text, what="value"):
    return _parse_list(text, int, what)


def write_csv(path, header, rows):
    """Write a header and rows with LF line endings.

    Floats are written with ``format_float``, so the file is lossless.
    """
    path = pathlib.Path(path)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_cell(value) for value in row])
    return path


def format_table(header, rows):
    """Lines of a left aligned plain text table."""
    cells = [list(header)] + [
        [value if isinstance(value, str) else format_cell(value) for value in row]
        for row in rows
    ]
    widths = [max(len(row[column]) for row in cells) for column in range(len(header))]
    lines = []
    for index, row in enumerate(cells):
        lines.append(
            "  ".join(value.ljust(width) for value, width in zip(row, widths)).rstrip()
        )
        if index == 0:
            lines.append("  ".join("-" * width for width in widths))
    return lines
