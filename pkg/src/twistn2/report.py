"""Deterministic check reports, rendered as text or JSON.

Reports are byte-stable for identical inputs: no timestamps, no set
iteration, insertion-ordered keys only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    ref: str
    status: str  # "pass" | "fail"
    witness: dict | str | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class Report:
    command: str
    params: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, name: str, ref: str, ok: bool, witness=None) -> None:
        self.checks.append(Check(name, ref, "pass" if ok else "fail",
                                 witness if (witness or witness == 0) else None))

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)
        self.notes.extend(other.notes)

    @property
    def passed(self) -> int:
        return sum(1 for c in self.checks if c.passed)

    @property
    def failed(self) -> int:
        return sum(1 for c in self.checks if not c.passed)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def as_dict(self) -> dict:
        payload = {
            "command": self.command,
            "params": self.params,
            "checks": [
                {"name": c.name, "ref": c.ref, "status": c.status,
                 **({"witness": c.witness} if c.witness is not None else {})}
                for c in self.checks
            ],
            "summary": {"passed": self.passed, "failed": self.failed},
        }
        if self.notes:
            payload["notes"] = list(self.notes)
        return payload

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, default=str)

    def to_text(self) -> str:
        lines = [f"== {self.command}"]
        if self.params:
            lines.append("   " + " ".join(f"{k}={v}" for k, v in self.params.items()))
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            line = f"{mark}  {c.name}"
            if c.witness is not None and not c.passed:
                line += f"  [{c.witness}]"
            lines.append(line)
        for note in self.notes:
            lines.append(f"note: {note}")
        lines.append(f"summary: {self.passed} passed, {self.failed} failed")
        return "\n".join(lines)
