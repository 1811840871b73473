"""Check results, reports and their JSON, CSV and text renderings.

Rendering is deterministic: no timestamps, sorted keys where order is free, and exact
ratios written as ``a/b`` strings.
"""

import csv
import io
import json
from collections import Counter
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Union

from pydantic import BaseModel, Field

from . import __version__
from .constructions import CATALOGUE_VERSION
from .invariants import PrimeSet, format_ratio


class CheckStatus(str, Enum):
    VERIFIED = "verified"
    COUNTEREXAMPLE = "counterexample"
    SKIPPED = "skipped"
    PAPER_VALUE_MISMATCH = "paper-value-mismatch"


Value = Union[Fraction, int, str, None]


def render_value(value: Value) -> Optional[str]:
    if value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        return format_ratio(value)
    return str(value)


class CheckResult(BaseModel):
    suite: str
    check_id: str
    group: str
    pi: Optional[str] = None
    status: CheckStatus
    lhs: Optional[str] = None
    rhs: Optional[str] = None
    detail: str = ""
    fired: bool = False

    @classmethod
    def make(
        cls,
        suite: str,
        check_id: str,
        group: str,
        pi: Optional[PrimeSet],
        holds: bool,
        lhs: Value = None,
        rhs: Value = None,
        detail: str = "",
        fired: bool = True,
    ) -> "CheckResult":
        """A verified or counterexample result depending on ``holds``."""
        return cls(
            suite=suite,
            check_id=check_id,
            group=group,
            pi=str(pi) if pi is not None else None,
            status=CheckStatus.VERIFIED if holds else CheckStatus.COUNTEREXAMPLE,
            lhs=render_value(lhs),
            rhs=render_value(rhs),
            detail=detail,
            fired=fired,
        )

    @classmethod
    def skipped(
        cls, suite: str, check_id: str, group: str, pi: Optional[PrimeSet], reason: str
    ) -> "CheckResult":
        return cls(
            suite=suite,
            check_id=check_id,
            group=group,
            pi=str(pi) if pi is not None else None,
            status=CheckStatus.SKIPPED,
            detail=reason,
        )

    def sort_key(self) -> tuple:
        return (self.suite, self.group, self.pi or "")


class Summary(BaseModel):
    total: int = 0
    counts: Dict[str, int] = Field(default_factory=dict)
    fired: Dict[str, int] = Field(default_factory=dict)


class Report(BaseModel):
    suite: str
    version: str = __version__
    catalogue_version: str = CATALOGUE_VERSION
    results: List[CheckResult] = Field(default_factory=list)
    summary: Summary = Field(default_factory=Summary)

    @property
    def has_counterexample(self) -> bool:
        return self.summary.counts.get(CheckStatus.COUNTEREXAMPLE.value, 0) > 0


def build_report(suite: str, results: Iterable[CheckResult]) -> Report:
    """Order results by (suite, group, pi) and compute the summary."""
    ordered = sorted(results, key=CheckResult.sort_key)
    counts = Counter(r.status.value for r in ordered)
    fired = Counter(r.check_id for r in ordered if r.fired)
    summary = Summary(
        total=len(ordered),
        counts={status.value: counts.get(status.value, 0) for status in CheckStatus},
        fired=dict(sorted(fired.items())),
    )
    return Report(suite=suite, results=ordered, summary=summary)


CSV_COLUMNS = ["suite", "check_id", "group", "pi", "status", "lhs", "rhs", "detail", "fired"]


def to_json(report: Report) -> str:
    return json.dumps(report.model_dump(mode="json"), indent=2) + "\n"


def from_json(text: str) -> Report:
    return Report.model_validate(json.loads(text))


def to_csv(report: Report) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in report.results:
        row = r.model_dump(mode="json")
        writer.writerow(["" if row[c] is None else row[c] for c in CSV_COLUMNS])
    return buffer.getvalue()


def to_text(report: Report) -> str:
    lines = [f"suite: {report.suite}  version: {report.version}  catalogue: {report.catalogue_version}"]
    for r in report.results:
        values = ""
        if r.lhs is not None or r.rhs is not None:
            values = f" [{r.lhs} vs {r.rhs}]"
        pi = f" pi={r.pi}" if r.pi else ""
        detail = f" - {r.detail}" if r.detail else ""
        lines.append(f"{r.status.value:<21} {r.check_id:<36} {r.group}{pi}{values}{detail}")
    counts = ", ".join(f"{k}={v}" for k, v in report.summary.counts.items())
    lines.append(f"total: {report.summary.total} ({counts})")
    return "\n".join(lines) + "\n"


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return to_json(report)
    if fmt == "csv":
        return to_csv(report)
    return to_text(report)
