from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Type

from vrhr._enum import CheckStatus, Severity
from vrhr.errors import VrhrError


@dataclass(frozen=True, slots=True)
class Violation:
    code: str
    message: str
    subject: str = ""
    severity: Severity = Severity.ERROR

    def __str__(self) -> str:
        where = f"{self.subject}: " if self.subject else ""
        return f"[{self.severity.value}] {where}{self.message}"

    def to_dict(self) -> Dict[str, str]:
        return {
            "code": self.code,
            "message": self.message,
            "subject": self.subject,
            "severity": self.severity.value,
        }


class ValidationReport:
    """Collects violations instead of raising on the first one."""

    __slots__ = ("subject", "_violations", "truncated", "note")

    def __init__(self, subject: str = "") -> None:
        self.subject = subject
        self._violations: List[Violation] = []
        self.truncated = False
        self.note: Optional[str] = None

    def __len__(self) -> int:
        return len(self._violations)

    def __iter__(self) -> Iterator[Violation]:
        return iter(self._violations)

    def add(
        self,
        code: str,
        message: str,
        subject: str = "",
        severity: Severity = Severity.ERROR,
    ) -> None:
        self._violations.append(Violation(code, message, subject, severity))

    def warn(self, code: str, message: str, subject: str = "") -> None:
        self.add(code, message, subject, Severity.WARNING)

    def extend(self, other: "ValidationReport") -> None:
        self._violations.extend(other)
        if other.truncated:
            self.mark_truncated(other.note or "truncated")

    def mark_truncated(self, note: str) -> None:
        self.truncated = True
        self.note = note

    @property
    def errors(self) -> List[Violation]:
        return [v for v in self._violations if v.severity is Severity.ERROR]

    @property
    def warnings(self) -> List[Violation]:
        return [v for v in self._violations if v.severity is Severity.WARNING]

    @property
    def ok(self) -> bool:
        return not self.errors

    @property
    def status(self) -> CheckStatus:
        if not self.ok:
            return CheckStatus.FAILED
        if self.truncated:
            return CheckStatus.TRUNCATED
        return CheckStatus.PASSED

    def codes(self) -> List[str]:
        return [v.code for v in self._violations]

    def messages(self) -> List[str]:
        return [v.message for v in self._violations]

    def raise_if_failed(self, exc_type: Type[VrhrError] = VrhrError) -> None:
        if not self.ok:
            summary = "; ".join(str(v) for v in self.errors)
            prefix = f"{self.subject}: " if self.subject else ""
            raise exc_type(f"{prefix}{summary}")

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "status": self.status.value,
            "violations": [v.to_dict() for v in self._violations],
        }
