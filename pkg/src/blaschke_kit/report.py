"""Verification records and reports, with deterministic CSV/JSON rendering."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any

PASS, FAIL, SKIPPED, INDETERMINATE, INVALID = "pass", "fail", "skipped", "indeterminate", "invalid"

CSV_COLUMNS = ["scenario", "check", "provenance", "status", "lhs", "rhs", "tolerance",
               "std_error", "witness", "details"]


def _clean(x: Any) -> Any:
    """Make values JSON-safe: numpy scalars to Python, non-finite floats to strings."""
    if hasattr(x, "item") and not isinstance(x, (list, tuple, dict)):
        try:
            x = x.item()
        except (ValueError, AttributeError):
            x = x.tolist()
    if isinstance(x, complex):
        return [_clean(x.real), _clean(x.imag)]
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if hasattr(x, "tolist"):
        return _clean(x.tolist())
    return x


@dataclass
class VerificationRecord:
    check: str
    provenance: str
    status: str
    lhs: float | None = None
    rhs: float | None = None
    tolerance: float | None = None
    std_error: float | None = None
    witness: Any = None
    details: dict = field(default_factory=dict)
    series: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status in (PASS, SKIPPED)

    def to_dict(self, timings: bool = False) -> dict:
        d = {
            "check": self.check, "provenance": self.provenance, "status": self.status,
            "lhs": self.lhs, "rhs": self.rhs, "tolerance": self.tolerance,
            "std_error": self.std_error, "witness": self.witness,
            "details": self.details, "series": self.series,
        }
        if timings:
            d["wall_time"] = self.wall_time
        return _clean(d)

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationRecord":
        keys = {"check", "provenance", "status", "lhs", "rhs", "tolerance", "std_error",
                "witness", "details", "series", "wall_time"}
        return cls(**{k: v for k, v in d.items() if k in keys})


@dataclass
class VerificationReport:
    scenario_id: str
    kind: str
    records: list[VerificationRecord] = field(default_factory=list)
    valid: bool = True
    message: str = ""

    @property
    def status(self) -> str:
        if not self.valid:
            return INVALID
        if any(r.status == FAIL for r in self.records):
            return FAIL
        if any(r.status == INDETERMINATE for r in self.records):
            return INDETERMINATE
        return PASS

    def add(self, record: VerificationRecord) -> VerificationRecord:
        self.records.append(record)
        return record

    def to_dict(self, timings: bool = False) -> dict:
        return {
            "scenario": self.scenario_id, "kind": self.kind, "status": self.status,
            "message": self.message,
            "records": [r.to_dict(timings) for r in self.records],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        rep = cls(d["scenario"], d["kind"], [VerificationRecord.from_dict(r) for r in d["records"]],
                  valid=d.get("status") != INVALID, message=d.get("message", ""))
        return rep


def reports_to_json(reports: list[VerificationReport], timings: bool = False) -> str:
    return json.dumps([r.to_dict(timings) for r in reports], indent=2, sort_keys=True) + "\n"


def reports_from_json(text: str) -> list[VerificationReport]:
    data = json.loads(text)
    if isinstance(data, dict):
        data = [data]
    return [VerificationReport.from_dict(d) for d in data]


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, (dict, list)):
        return json.dumps(x, sort_keys=True)
    return str(x)


def reports_to_csv(reports: list[VerificationReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rep in reports:
        if not rep.records:
            w.writerow([rep.scenario_id, "scenario", rep.kind, rep.status, "", "", "", "", "",
                        json.dumps({"message": rep.message})])
        for r in rep.records:
            d = r.to_dict()
            w.writerow([rep.scenario_id] + [_fmt(d[c]) for c in CSV_COLUMNS[1:]])
    return buf.getvalue()
