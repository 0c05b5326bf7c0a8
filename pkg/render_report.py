"""Markdown rendering of verification reports."""

from pathlib import Path

from jinja2 import Template

from models import Report

TEMPLATE_PATH = Path(__file__).resolve().parent / "templates" / "report_table.md.j2"


def render_report_table(report: Report) -> str:
    """Render a report as a Markdown summary and table, one row per record."""

    if not TEMPLATE_PATH.exists():
        raise FileNotFoundError(TEMPLATE_PATH)

    template = Template(TEMPLATE_PATH.read_text(encoding="utf-8"))
    return template.render(report=report)


def failing_records_table(report: Report) -> str:
    """The same table restricted to failed records; empty when everything passed."""

    failures = [record for record in report.records if not record.passed]
    if not failures:
        return ""
    return render_report_table(report.model_copy(update={"records": failures}))
