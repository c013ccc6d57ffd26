from __future__ import annotations

import os
from dataclasses import dataclass, field

DEFAULT_BUDGET = 2**24


def default_budget() -> int:
    """Search budget; ``PICARDKIT_BUDGET`` overrides the 2**24 default."""
    raw = os.environ.get("PICARDKIT_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass(frozen=True)
class Violation:
    axiom: str
    instance: tuple  # the full instantiating tuple, as coordinate tuples
    lhs: tuple
    rhs: tuple

    def as_dict(self):
        return {
            "axiom": self.axiom,
            "instance": [list(x) if isinstance(x, tuple) else x for x in self.instance],
            "lhs": list(self.lhs),
            "rhs": list(self.rhs),
        }


@dataclass
class ValidationReport:
    """Outcome of an exhaustive axiom check: every violated instance is listed."""

    subject: str
    checked: dict[str, int] = field(default_factory=dict)
    violations: list[Violation] = field(default_factory=list)
    mode: str = "exhaustive"

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def failed_axioms(self) -> set[str]:
        return {v.axiom for v in self.violations}

    def as_dict(self):
        return {
            "subject": self.subject,
            "mode": self.mode,
            "valid": self.ok,
            "checked": dict(sorted(self.checked.items())),
            "violations": [v.as_dict() for v in self.violations],
        }
