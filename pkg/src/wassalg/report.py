"""Outcome records for randomized law and inequality checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterable

from .numeric import FLOAT_TOL, format_number


@dataclass
class LawReport:
    """Result of checking one law over a batch of instances.

    ``worst_slack`` is the smallest observed ``rhs - lhs`` (for equalities,
    minus the largest discrepancy). Negative values are violations; a trial
    only counts as a failure when its slack drops below ``-tolerance``.
    """

    law: str
    trials: int = 0
    failures: int = 0
    worst_slack: Any = math.inf
    witness: Any = None
    tolerance: float = FLOAT_TOL
    vacuous: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, slack, witness=None, *, tolerance: float | None = None) -> bool:
        """Add one trial; returns True when it passed."""
        tol = self.tolerance if tolerance is None else tolerance
        self.trials += 1
        if slack < self.worst_slack:
            self.worst_slack = slack
        ok = slack >= -tol
        if not ok:
            self.failures += 1
            if self.witness is None:
                self.witness = witness
        return ok

    def record_equality(self, equal: bool, discrepancy=0, witness=None) -> bool:
        self.trials += 1
        slack = -abs(discrepancy) if discrepancy else 0
        if slack < self.worst_slack:
            self.worst_slack = slack
        if not equal:
            self.failures += 1
            if self.witness is None:
                self.witness = witness
        return equal

    def record_vacuous(self) -> None:
        self.trials += 1
        self.vacuous += 1

    def merge(self, other: "LawReport") -> "LawReport":
        if other.law != self.law:
            raise ValueError(f"cannot merge reports for {self.law!r} and {other.law!r}")
        return LawReport(
            law=self.law,
            trials=self.trials + other.trials,
            failures=self.failures + other.failures,
            worst_slack=min(self.worst_slack, other.worst_slack),
            witness=self.witness if self.witness is not None else other.witness,
            tolerance=max(self.tolerance, other.tolerance),
            vacuous=self.vacuous + other.vacuous,
            notes=self.notes + other.notes,
        )

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        slack = "n/a" if self.worst_slack == math.inf else format_number(self.worst_slack)
        line = f"{status} {self.law}: trials={self.trials} failures={self.failures} worst_slack={slack}"
        if self.vacuous:
            line += f" vacuous={self.vacuous}"
        return line


def merge_reports(reports: Iterable[LawReport]) -> LawReport:
    it = iter(reports)
    total = next(it)
    for r in it:
        total = total.merge(r)
    return total
