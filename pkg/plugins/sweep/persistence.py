"""CSV persistence for sweep reports."""

from __future__ import annotations

import csv
import os
from typing import Iterable

from report_integrity import write_fingerprint

from .runner import BoundReportRow

CSV_COLUMNS = (
    "q",
    "chi_exponents",
    "t",
    "method",
    "l_abs_mid",
    "l_abs_radius",
    "bound_name",
    "bound_value",
    "margin",
    "verdict",
)


def format_number(value: float) -> str:
    return format(value, ".17g")


def row_fields(row: BoundReportRow) -> list[str]:
    return [
        str(row.q),
        "-".join(str(exponent) for exponent in row.chi_exponents),
        format_number(row.t),
        row.method,
        format_number(row.l_abs_mid),
        format_number(row.l_abs_radius),
        row.bound_name,
        format_number(row.bound_value),
        format_number(row.margin),
        row.verdict.value,
    ]


def write_report(path: str, rows: Iterable[BoundReportRow]) -> str:
    """Write the CSV and its SHA-256 sidecar; returns the fingerprint."""

    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as file:
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        writer.writerows(row_fields(row) for row in rows)
    return write_fingerprint(path)
