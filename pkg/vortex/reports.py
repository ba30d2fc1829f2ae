# vortex/reports.py
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from .choices import ClaimStatus


@dataclass(frozen=True)
class ReportEntry:
    claim: str
    status: str
    witness: str = ""

    @property
    def failed(self) -> bool:
        return self.status == ClaimStatus.FAIL

    def as_dict(self) -> Dict[str, Any]:
        return {"claim": self.claim, "status": str(self.status), "witness": self.witness}


@dataclass
class ConditionReport:
    """
    Outcome of a CW-style check.

    Violations are entries, never exceptions; `passed` holds exactly when no
    entry failed.
    """
    title: str
    entries: List[ReportEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not any(e.failed for e in self.entries)

    @property
    def failures(self) -> List[ReportEntry]:
        return [e for e in self.entries if e.failed]

    def ok(self, claim: str, witness: str = "") -> None:
        self.entries.append(ReportEntry(claim, ClaimStatus.PASS, witness))

    def fail(self, claim: str, witness: str) -> None:
        self.entries.append(ReportEntry(claim, ClaimStatus.FAIL, witness))

    def record(self, claim: str, holds: bool, witness: str = "") -> bool:
        if holds:
            self.ok(claim, witness)
        else:
            self.fail(claim, witness)
        return holds

    def as_dict(self) -> Dict[str, Any]:
        return {
            "title": self.title,
            "pass": self.passed,
            "checked": len(self.entries),
            "failures": [e.as_dict() for e in self.failures],
            "entries": [e.as_dict() for e in self.entries],
        }


@dataclass
class AxiomReport(ConditionReport):
    """
    Outcome of a descriptive-proximity axiom sweep.

    Only counterexamples are kept as entries; passing trials are tallied in
    `counts` so a 1000-trial sweep stays readable.
    """
    probe: str = ""
    seed: Optional[int] = None
    trials: int = 0
    counts: Dict[str, int] = field(default_factory=dict)

    def tally(self, claim: str, holds: bool, witness: str = "") -> bool:
        if holds:
            self.counts[claim] = self.counts.get(claim, 0) + 1
        else:
            self.fail(claim, witness)
        return holds

    def as_dict(self) -> Dict[str, Any]:
        return {
            "title": self.title,
            "probe": self.probe,
            "seed": self.seed,
            "trials": self.trials,
            "pass": self.passed,
            "passed_checks": dict(sorted(self.counts.items())),
            "counterexamples": [e.as_dict() for e in self.failures],
        }


def render_report(payload: Dict[str, Any]) -> str:
    """Structured text with a stable key order (dict insertion order)."""
    return json.dumps(payload, indent=2, ensure_ascii=False)
