"""
Export of the validation table as CSV, JSON and a plain-text table.
"""

from pathlib import Path
from typing import Sequence

from src.models.feasibility_model import ValidationReport, ValidationRow
from src.utils.format_utils import engineering, render_table
from src.utils.io_utils import csv_text, format_float, write_text

VALIDATION_CSV_COLUMNS = (
    "case_id",
    "quantity",
    "unit",
    "paper_value",
    "computed_value",
    "ratio",
    "tolerance_factor",
    "pass",
    "assumptions",
)


def validation_csv(rows: Sequence[ValidationRow]) -> str:
    return csv_text(
        VALIDATION_CSV_COLUMNS,
        (
            [
                row.case_id,
                row.quantity,
                row.unit,
                format_float(row.paper_value),
                format_float(row.computed_value),
                format_float(row.ratio),
                format_float(row.tolerance_factor),
                "true" if row.passed else "false",
                row.assumptions,
            ]
            for row in rows
        ),
    )


def write_validation_csv(rows: Sequence[ValidationRow], path: Path) -> None:
    write_text(path, validation_csv(rows))


def validation_json(rows: Sequence[ValidationRow]) -> str:
    return ValidationReport(rows=list(rows)).model_dump_json(by_alias=True, indent=2)


def validation_table(rows: Sequence[ValidationRow]) -> str:
    body = [
        [
            row.case_id,
            row.quantity,
            engineering(row.paper_value, row.unit),
            engineering(row.computed_value, row.unit),
            f"{row.ratio:.2f}",
            f"x{row.tolerance_factor:g}",
            "pass" if row.passed else "FAIL",
        ]
        for row in rows
    ]
    passed = sum(row.passed for row in rows)
    table = render_table(
        ["case", "quantity", "paper", "computed", "ratio", "tol", "result"], body
    )
    return f"{table}\n\n{passed}/{len(rows)} rows pass"
