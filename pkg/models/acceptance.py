"""
WeylCone - Resultados de la batería de aceptación.
"""
from dataclasses import dataclass, field


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0


@dataclass
class AcceptanceReport:
    quick: bool
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(check.passed for check in self.checks)

    def failures(self) -> list[CheckResult]:
        return [check for check in self.checks if not check.passed]
