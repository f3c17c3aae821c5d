"""Check results and reports shared by the verifiers and the CLI."""
from dataclasses import dataclass, field as dfield
from typing import Any

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class CheckResult:
    check: str
    status: str
    paper_ref: str = ""
    witness: Any = None

    @property
    def ok(self):
        return self.status != FAIL

    def to_json(self):
        return {"check": self.check, "paper_ref": self.paper_ref, "status": self.status, "witness": self.witness}


@dataclass
class Report:
    checks: list = dfield(default_factory=list)

    def add(self, check, ok, ref="", witness=None):
        r = CheckResult(check, PASS if ok else FAIL, ref, witness)
        self.checks.append(r)
        return r

    def skip(self, check, ref="", reason=None):
        r = CheckResult(check, SKIPPED, ref, reason)
        self.checks.append(r)
        return r

    def extend(self, other):
        self.checks.extend(other.checks)
        return self

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def failures(self):
        return [c for c in self.checks if c.status == FAIL]

    def find(self, check):
        return [c for c in self.checks if c.check == check]

    def __len__(self):
        return len(self.checks)

    def to_json(self):
        return [c.to_json() for c in sorted(self.checks, key=lambda c: c.check)]

    def summary(self):
        n = {PASS: 0, FAIL: 0, SKIPPED: 0}
        for c in self.checks:
            n[c.status] += 1
        return n


class RelationError(ValueError):
    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report
