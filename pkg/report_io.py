"""Reading and writing verification reports as JSON or CSV."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from pydantic import ValidationError
import structlog

from models import Report, ReportFormat

# CSV header, in the order rows are written
CSV_COLUMNS = ("check_name", "param_string", "lhs", "rhs", "margin", "pass")

log = structlog.get_logger()


def emit_report(report: Report, output_format: ReportFormat | str) -> str:
    """
    Serialize a report.

    Args:
        report: The report to serialize.
        output_format: ``json`` for the full document, ``csv`` for one row a record.

    Returns:
        str: The serialized report, newline-terminated.
    """

    match ReportFormat(output_format):
        case ReportFormat.JSON:
            return report.model_dump_json(by_alias=True, indent=2) + "\n"
        case ReportFormat.CSV:
            buffer = io.StringIO()
            writer = csv.writer(buffer, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for record in report.records:
                writer.writerow(
                    (
                        record.check_name,
                        record.param_string,
                        repr(record.lhs),
                        repr(record.rhs),
                        repr(record.margin),
                        "true" if record.passed else "false",
                    )
                )
            return buffer.getvalue()


def save_report(
    report: Report, path: Path, output_format: ReportFormat | str = ReportFormat.JSON
) -> None:
    """
    Write a report to disk.

    Raises:
        ValueError: If the file cannot be written.
    """
    try:
        path.write_text(emit_report(report, output_format), encoding="utf-8")
    except OSError as e:
        raise ValueError(f"Error writing report to {path}") from e
    log.info("Saved report", path=str(path), suite=report.suite, total=report.summary.total)


def load_report(path: Path) -> Report:
    """
    Load a JSON report written by :func:`save_report`.

    Raises:
        ValueError: If the file is missing, is not JSON or does not match the schema.
    """

    try:
        text = path.read_text(encoding="utf-8")
        report = Report.model_validate(json.loads(text))
    except OSError as e:
        raise ValueError(f"Error reading report from {path}") from e
    except json.JSONDecodeError as e:
        raise ValueError(f"Report {path} is not valid JSON") from e
    except ValidationError as e:
        raise ValueError(f"Report {path} does not match the report schema") from e
    log.info("Loaded report", path=str(path), suite=report.suite)
    return report
