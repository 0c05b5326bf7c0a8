"""Pytest tests for report serialization."""

import csv
import io
import json

import pytest

from models import CheckRecord, Report, ReportFormat, RunConfig
from report_io import CSV_COLUMNS, emit_report, load_report, save_report


@pytest.fixture
def report():
    records = [
        CheckRecord.inequality("key-est/upper", 1, {"n": 2, "N": 3}, 0.5, 1.0, 1e-12),
        CheckRecord.inequality("key-est/upper", 0, {"n": 2, "N": 3}, 2.0, 1.0, 1e-12),
        CheckRecord.exact_zero("ideal", 0, {"i": 1, "j": 2}, 0),
    ]
    return Report.build("key-est", RunConfig(q="1/2", samples=2), records)


class TestEmitJson:
    """The JSON document."""

    def test_schema(self, report):
        document = json.loads(emit_report(report, ReportFormat.JSON))
        assert list(document) == ["suite", "config", "records", "summary"]
        assert document["summary"] == {"total": 3, "passed": 2, "min_margin": -1.0}
        assert document["config"]["q"] == "1/2"
        assert list(document["records"][0]) == [
            "check_name",
            "sample_index",
            "parameters",
            "lhs",
            "rhs",
            "margin",
            "tolerance",
            "pass",
        ]

    def test_records_sorted(self, report):
        document = json.loads(emit_report(report, "json"))
        assert [(r["check_name"], r["sample_index"]) for r in document["records"]] == [
            ("ideal", 0),
            ("key-est/upper", 0),
            ("key-est/upper", 1),
        ]

    def test_empty(self):
        text = emit_report(Report.build("ideal", RunConfig(), []), "json")
        assert json.loads(text)["summary"] == {
            "total": 0,
            "passed": 0,
            "min_margin": None,
        }

    def test_single_record_min_margin(self):
        record = CheckRecord.inequality("c", 0, {}, 1.0, 4.0, 0.0)
        text = emit_report(Report.build("c", RunConfig(), [record]), "json")
        assert json.loads(text)["summary"]["min_margin"] == record.margin

    def test_deterministic(self, report):
        assert emit_report(report, "json") == emit_report(report, "json")
        assert emit_report(report, "json").endswith("\n")


class TestEmitCsv:
    """One row a record."""

    def test_rows(self, report):
        rows = list(csv.reader(io.StringIO(emit_report(report, ReportFormat.CSV))))
        assert tuple(rows[0]) == CSV_COLUMNS
        assert rows[1] == ["ideal", "i=1;j=2", "0.0", "0.0", "-0.0", "true"]
        assert rows[2][1] == "n=2;N=3"
        assert rows[2][5] == "false"
        assert rows[3][4] == "0.5"
        assert len(rows) == 4

    def test_floats_round_trip(self, report):
        rows = list(csv.reader(io.StringIO(emit_report(report, "csv"))))
        for row, record in zip(rows[1:], report.records, strict=True):
            assert float(row[2]) == record.lhs
            assert float(row[4]) == record.margin


class TestSaveLoad:
    """Report files on disk."""

    def test_round_trip(self, report, tmp_path):
        path = tmp_path / "report.json"
        save_report(report, path)
        assert load_report(path) == report

    def test_save_csv(self, report, tmp_path):
        path = tmp_path / "report.csv"
        save_report(report, path, "csv")
        assert path.read_text(encoding="utf-8").startswith(",".join(CSV_COLUMNS))

    def test_save_to_missing_directory(self, report, tmp_path):
        with pytest.raises(ValueError, match="Error writing report"):
            save_report(report, tmp_path / "missing" / "report.json")

    def test_load_missing(self, tmp_path):
        with pytest.raises(ValueError, match="Error reading report"):
            load_report(tmp_path / "nothing.json")

    def test_load_not_json(self, tmp_path):
        path = tmp_path / "report.json"
        path.write_text("not json", encoding="utf-8")
        with pytest.raises(ValueError, match="not valid JSON"):
            load_report(path)

    def test_load_wrong_schema(self, tmp_path):
        path = tmp_path / "report.json"
        path.write_text('{"suite": "ideal"}', encoding="utf-8")
        with pytest.raises(ValueError, match="report schema"):
            load_report(path)
