"""Check results and the verification report written by ``tdlab verify``."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

PASS, FAIL, NA = "pass", "fail", "not_applicable"


@dataclass
class CheckResult:
    name: str
    status: str
    details: dict = field(default_factory=dict)

    @classmethod
    def of(cls, name: str, ok: bool, details: dict | None = None) -> "CheckResult":
        return cls(name, PASS if ok else FAIL, dict(details or {}))

    @classmethod
    def na(cls, name: str, details: dict | None = None) -> "CheckResult":
        return cls(name, NA, dict(details or {}))

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def as_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "details": _jsonable(self.details)}


@dataclass
class GraphRecord:
    """Checks run on one graph, or on one class of labelled graphs that
    share order, minimum degree, support count and polynomial."""

    descriptor: str
    metrics: dict
    checks: list[CheckResult] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    graph_count: int = 1

    def check(self, name: str) -> CheckResult:
        return next(c for c in self.checks if c.name == name)

    def as_dict(self) -> dict:
        return {
            "descriptor": self.descriptor,
            "graph_count": self.graph_count,
            "metrics": _jsonable(self.metrics),
            "checks": [c.as_dict() for c in self.checks],
            "notes": list(self.notes),
        }


@dataclass
class VerificationReport:
    records: list[GraphRecord] = field(default_factory=list)

    def summary(self) -> dict:
        counts = {PASS: 0, FAIL: 0, NA: 0}
        graphs = 0
        for rec in self.records:
            graphs += rec.graph_count
            for c in rec.checks:
                counts[c.status] += 1
        return {
            "records": len(self.records),
            "graphs": graphs,
            "pass": counts[PASS],
            "fail": counts[FAIL],
            "not_applicable": counts[NA],
        }

    @property
    def ok(self) -> bool:
        return all(not c.failed for rec in self.records for c in rec.checks)

    def failures(self) -> list[tuple[GraphRecord, CheckResult]]:
        return [(r, c) for r in self.records for c in r.checks if c.failed]

    def as_dict(self) -> dict:
        return {"records": [r.as_dict() for r in self.records], "summary": self.summary()}

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.as_dict(), indent=indent)

    def human_summary(self) -> str:
        s = self.summary()
        lines = [
            f"records: {s['records']}  graphs: {s['graphs']}  "
            f"pass: {s['pass']}  fail: {s['fail']}  not_applicable: {s['not_applicable']}"
        ]
        by_name: dict[str, dict[str, int]] = {}
        for rec in self.records:
            for c in rec.checks:
                tally = by_name.setdefault(c.name, {PASS: 0, FAIL: 0, NA: 0})
                tally[c.status] += rec.graph_count
        for name, t in by_name.items():
            lines.append(f"  {name:28s} pass={t[PASS]} fail={t[FAIL]} n/a={t[NA]}")
        for rec, c in self.failures():
            lines.append(f"FAIL {rec.descriptor}: {c.name} {json.dumps(_jsonable(c.details))}")
        for rec in self.records:
            for note in rec.notes:
                lines.append(f"NOTE {rec.descriptor}: {note}")
        lines.append("ALL CHECKS PASSED" if self.ok else "CHECK FAILURES PRESENT")
        return "\n".join(lines)


def load_schema() -> dict:
    return json.loads(resources.files("tdlab").joinpath("report.schema.json").read_text())


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, (bool, int, float, str)) or v is None:
        return v
    if hasattr(v, "item"):
        return v.item()
    return str(v)
