from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


@dataclass
class CheckResult:
    name: str
    passed: bool
    residual: str | None = None
    point: dict | None = None
    note: str | None = None

    def to_dict(self) -> dict:
        d = {"name": self.name, "pass": self.passed, "residual": self.residual,
             "point": self.point}
        if self.note is not None:
            d["note"] = self.note
        return d


@dataclass
class Report:
    """An ordered collection of check results; failures are entries, not exceptions."""

    title: str
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, name, passed, residual=None, point=None, note=None) -> CheckResult:
        if isinstance(residual, Fraction):
            residual = f"{residual.numerator}/{residual.denominator}"
        res = CheckResult(name, bool(passed), residual, point, note)
        self.checks.append(res)
        return res

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(CheckResult(prefix + c.name, c.passed, c.residual, c.point, c.note))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __len__(self):
        return len(self.checks)

    def to_dict(self) -> dict:
        return {"title": self.title, "pass": self.passed,
                "checks": [c.to_dict() for c in self.checks]}


def rat_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"
