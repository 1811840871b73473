"""Tests for check results and report rendering."""

import csv
import io
import json
from fractions import Fraction

from pidensity.invariants import PrimeSet
from pidensity.report import (
    CSV_COLUMNS,
    CheckResult,
    CheckStatus,
    build_report,
    from_json,
    render,
    render_value,
    to_csv,
    to_json,
    to_text,
)


class TestCheckResult:
    def test_make_verified(self):
        r = CheckResult.make("hall", "hall.main_theorem", "Sym(3)", PrimeSet.of(2, 3), True,
                             Fraction(1, 2), Fraction(1, 2))
        assert r.status is CheckStatus.VERIFIED
        assert r.pi == "{2,3}"
        assert (r.lhs, r.rhs) == ("1/2", "1/2")
        assert r.fired

    def test_make_counterexample(self):
        r = CheckResult.make("density", "density.monotone", "G", None, False, 3, "x")
        assert r.status is CheckStatus.COUNTEREXAMPLE
        assert r.pi is None
        assert (r.lhs, r.rhs) == ("3", "x")

    def test_skipped(self):
        r = CheckResult.skipped("j1", "j1.density", "J1", PrimeSet.of(3, 5), "no file")
        assert r.status is CheckStatus.SKIPPED
        assert r.detail == "no file"
        assert not r.fired

    def test_render_value(self):
        assert render_value(None) is None
        assert render_value(Fraction(4, 6)) == "2/3"
        assert render_value(Fraction(3)) == "3/1"
        assert render_value(7) == "7"


class TestReport:
    """Ordering, summaries and the three renderings."""

    def setup_method(self):
        pi = PrimeSet.of(3, 5)
        self.results = [
            CheckResult.make("sylow", "sylow.normalizer_index", "B", pi, True, 9),
            CheckResult.make("hall", "hall.main_theorem", "B", pi, False, Fraction(1, 2), Fraction(1, 3),
                             "no nilpotent Hall subgroup"),
            CheckResult.make("hall", "hall.main_theorem", "A", pi, True, detail="premise false",
                             fired=False),
            CheckResult.skipped("j1", "j1.density", "J1", pi, "no generator file configured"),
            CheckResult(suite="sharpness", check_id="sharpness.normalisation", group="C", pi="{2,5}",
                        status=CheckStatus.PAPER_VALUE_MISMATCH, lhs="1/2", rhs="1/6", fired=True),
        ]
        self.report = build_report("demo", self.results)

    def test_ordering(self):
        keys = [(r.suite, r.group) for r in self.report.results]
        assert keys == [("hall", "A"), ("hall", "B"), ("j1", "J1"), ("sharpness", "C"), ("sylow", "B")]

    def test_summary(self):
        summary = self.report.summary
        assert summary.total == 5
        assert summary.counts == {
            "verified": 2,
            "counterexample": 1,
            "skipped": 1,
            "paper-value-mismatch": 1,
        }
        assert summary.fired == {
            "hall.main_theorem": 1,
            "sharpness.normalisation": 1,
            "sylow.normalizer_index": 1,
        }
        assert self.report.has_counterexample

    def test_no_counterexample(self):
        report = build_report("demo", [r for r in self.results if r.status is not CheckStatus.COUNTEREXAMPLE])
        assert not report.has_counterexample
        assert report.summary.counts["counterexample"] == 0

    def test_json(self):
        text = to_json(self.report)
        data = json.loads(text)
        assert data["suite"] == "demo"
        assert data["results"][1]["status"] == "counterexample"
        assert to_json(from_json(text)) == text

    def test_csv(self):
        rows = list(csv.reader(io.StringIO(to_csv(self.report))))
        assert rows[0] == CSV_COLUMNS
        assert len(rows) == 6
        assert rows[3][CSV_COLUMNS.index("lhs")] == ""

    def test_text(self):
        text = to_text(self.report)
        assert text.startswith("suite: demo")
        assert "[1/2 vs 1/3] - no nilpotent Hall subgroup" in text
        assert text.rstrip().endswith("paper-value-mismatch=1)")

    def test_render_dispatch(self):
        assert render(self.report, "json") == to_json(self.report)
        assert render(self.report, "csv") == to_csv(self.report)
        assert render(self.report, "text") == to_text(self.report)

    def test_empty_report(self):
        report = build_report("empty", [])
        assert report.summary.total == 0
        assert "total: 0" in to_text(report)
