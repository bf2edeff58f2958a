"""
Check reports shared by every verification routine and the CLI.
"""
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

PASS = "pass"
FAIL = "fail"
BLOCKED = "blocked"
SKIPPED = "skipped"


@dataclass
class Report:
    r"""Outcome of one check.

    :param check:                Name of the check, e.g. "cocycle".
    :param status:               pass, fail, blocked or skipped.
    :param subject:              Declaration the check ran on.
    :param details:              Order-by-order (or sample-by-sample) data,
                                 JSON-serializable, exact values as strings.
    :param lowest_failing_order: Smallest power of h at which a failure shows.
    :param witnesses:            Offending tensors/functions, rendered exactly.
    """
    check: str
    status: str
    subject: str = ""
    details: List[Dict[str, Any]] = field(default_factory=list)
    lowest_failing_order: Optional[int] = None
    witnesses: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status in (PASS, SKIPPED)

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def add_failure(self, order: Optional[int], witness: str) -> None:
        self.status = FAIL
        if order is not None and (self.lowest_failing_order is None or
                                  order < self.lowest_failing_order):
            self.lowest_failing_order = order
        self.witnesses.append(witness)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.check,
            "status": self.status,
            "subject": self.subject,
            "details": self.details,
            "lowest_failing_order": self.lowest_failing_order,
            "witnesses": self.witnesses,
        }

    def render_text(self, max_witnesses: int = 3) -> str:
        head = f"[{self.status.upper():7}] {self.check}"
        if self.subject:
            head += f" ({self.subject})"
        if self.lowest_failing_order is not None:
            head += f" lowest failing order {self.lowest_failing_order}"
        lines = [head]
        for detail in self.details:
            if "summary" in detail:
                lines.append(f"          {detail['summary']}")
        for witness in self.witnesses[:max_witnesses]:
            lines.append(f"          witness: {witness}")
        if len(self.witnesses) > max_witnesses:
            lines.append(f"          ... {len(self.witnesses) - max_witnesses} more")
        return "\n".join(lines)


def make_report(check: str, subject: str = "") -> Report:
    return Report(check=check, status=PASS, subject=subject)


def blocked_report(check: str, subject: str, reason: str) -> Report:
    return Report(check=check, status=BLOCKED, subject=subject,
                  details=[{"summary": f"blocked: {reason}"}])


def skipped_report(check: str, subject: str, reason: str) -> Report:
    return Report(check=check, status=SKIPPED, subject=subject,
                  details=[{"summary": f"skipped: {reason}"}])


def reports_to_json(reports: List[Report], header: Dict[str, Any]) -> str:
    """Machine-readable form. Sorted keys and no timestamps, so identical
    inputs give byte-identical output."""
    document = dict(header)
    document["reports"] = [r.to_dict() for r in reports]
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def all_passed(reports: List[Report]) -> bool:
    return all(r.status != FAIL for r in reports)
