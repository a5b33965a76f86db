"""Verification reports returned by the checkers and printed by the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .ring import MPoly, format_weight

PASS = "PASS"
FAIL = "FAIL"
ERROR = "ERROR"


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    title: str
    values: dict[str, Any] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> Check:
        check = Check(name, bool(passed), detail)
        self.checks.append(check)
        return check

    def extend(self, other: Report, prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.detail))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def verdict(self) -> str:
        return PASS if self.passed else FAIL

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict[str, Any]:
        return {
            "title": self.title,
            "values": {k: to_jsonable(v) for k, v in self.values.items()},
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
            "verdict": self.verdict,
        }


def to_jsonable(value: Any) -> Any:
    """Weights become their literal strings; containers are converted recursively."""
    if isinstance(value, (Fraction, MPoly)):
        return format_weight(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return value
