"""Check reports with a deterministic JSON rendering and a text table."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


def plain(value):
    """Convert witnesses into JSON-friendly values, deterministically."""
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted((plain(v) for v in value), key=repr)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    return str(value)


@dataclass
class Verdict:
    name: str
    status: str
    witness: object = None

    def as_dict(self) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.witness is not None:
            out["witness"] = plain(self.witness)
        return out


@dataclass
class Report:
    command: list[str]
    budgets: dict = field(default_factory=dict)
    checks: list[Verdict] = field(default_factory=list)
    data: dict = field(default_factory=dict)
    wall_time: float | None = None

    def add(self, name: str, ok: bool, witness=None) -> bool:
        self.checks.append(Verdict(name, PASS if ok else FAIL, witness))
        return bool(ok)

    def skip(self, name: str, reason) -> None:
        self.checks.append(Verdict(name, SKIPPED, reason))

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    @property
    def verdict(self) -> str:
        """``fail`` if any check failed, else ``skipped`` if nothing passed but something was skipped."""
        counts = self.counts()
        if counts[FAIL]:
            return FAIL
        if counts[SKIPPED] and not counts[PASS]:
            return SKIPPED
        return PASS

    def counts(self) -> dict:
        out = {PASS: 0, FAIL: 0, SKIPPED: 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def to_json(self) -> str:
        """Machine-readable form; wall time is left out so output is byte-stable."""
        doc = {
            "command": list(self.command),
            "budgets": plain(self.budgets),
            "checks": [c.as_dict() for c in self.checks],
            "summary": self.counts(),
            "verdict": self.verdict,
        }
        if self.data:
            doc["data"] = plain(self.data)
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = ["command: " + " ".join(self.command)]
        if self.budgets:
            lines.append("budgets: " + ", ".join(f"{k}={v}" for k, v in sorted(self.budgets.items())))
        width = max([len(c.name) for c in self.checks] + [5])
        for c in self.checks:
            line = f"  {c.name.ljust(width)}  {c.status.upper()}"
            if c.witness is not None and c.status != PASS:
                line += f"  {json.dumps(plain(c.witness), sort_keys=True)}"
            lines.append(line)
        for k, v in sorted(self.data.items()):
            lines.append(f"{k}: {json.dumps(plain(v), sort_keys=True)}")
        counts = self.counts()
        lines.append(f"verdict: {self.verdict} "
                     f"({counts[PASS]} pass, {counts[FAIL]} fail, {counts[SKIPPED]} skipped)")
        if self.wall_time is not None:
            lines.append(f"wall time: {self.wall_time:.2f}s")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_text()
