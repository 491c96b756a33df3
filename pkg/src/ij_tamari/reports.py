"""
Pass/fail reports produced by the verifiers.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple


@dataclass(frozen=True)
class Check:
    """One named assertion and the data needed to inspect it."""

    name: str
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)

    def to_record(self) -> Dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "details": self.details}


@dataclass
class Report:
    """
    Ordered list of checks about one subject (usually a pair).

    Verifiers append with ``check``; a failed check never raises.
    """

    title: str
    subject: Dict[str, Any] = field(default_factory=dict)
    checks: List[Check] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)
    skipped: List[str] = field(default_factory=list)

    def check(self, name: str, passed: bool, **details: Any) -> bool:
        self.checks.append(Check(name, bool(passed), details))
        return bool(passed)

    def skip(self, name: str) -> None:
        self.skipped.append(name)

    def extend(self, other: "Report", prefix: str = "") -> None:
        """Absorb the checks of another report, prefixing their names."""
        for item in other.checks:
            self.checks.append(Check(prefix + item.name, item.passed, item.details))
        self.skipped.extend(prefix + name for name in other.skipped)

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.checks)

    @property
    def failures(self) -> Tuple[Check, ...]:
        return tuple(item for item in self.checks if not item.passed)

    def to_record(self) -> Dict[str, Any]:
        return {
            "title": self.title,
            "subject": self.subject,
            "passed": self.passed,
            "summary": self.summary,
            "checks": [item.to_record() for item in self.checks],
            "skipped": list(self.skipped),
        }

    def to_text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{self.title} [{status}]"]
        if self.subject:
            lines.append("  subject: " + ", ".join(f"{k}={v}" for k, v in self.subject.items()))
        for key, value in self.summary.items():
            lines.append(f"  {key}: {value}")
        for item in self.checks:
            mark = "ok " if item.passed else "FAIL"
            lines.append(f"  [{mark}] {item.name}")
            if not item.passed and item.details:
                lines.append(f"         {item.details}")
        for name in self.skipped:
            lines.append(f"  [skip] {name}")
        return "\n".join(lines) + "\n"
