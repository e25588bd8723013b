"""Structured results for verification runs."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
RECORDED = "recorded"


@dataclass(frozen=True)
class Check:
    """One verified statement: a name, how it was checked, and the result."""

    name: str
    method: str
    status: str
    detail: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "method": self.method,
            "status": self.status,
            "detail": self.detail,
        }


@dataclass
class RelationReport:
    """A batch of checks for one representation."""

    representation: str
    two_s: int
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, method: str, ok: bool, detail: str = "") -> Check:
        chk = Check(name, method, PASS if ok else FAIL, detail)
        self.checks.append(chk)
        return chk

    def record(self, name: str, method: str, detail: str = "") -> Check:
        chk = Check(name, method, RECORDED, detail)
        self.checks.append(chk)
        return chk

    def extend(self, other: "RelationReport") -> None:
        self.checks.extend(other.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    def all_passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "schema": 1,
            "representation": self.representation,
            "two_s": self.two_s,
            "checks": [c.as_dict() for c in sorted(self.checks, key=lambda c: c.name)],
        }
