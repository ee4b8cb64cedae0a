"""Check results and deterministic report rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
HARD = "hard-inconsistency"


class PreconditionError(Exception):
    """A check or constructor precondition failed on a concrete witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness

_STATUSES = (PASS, FAIL, INCONCLUSIVE, HARD)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_HARD = 4


@dataclass
class CheckResult:
    name: str
    status: str
    witness: Optional[Tuple[str, ...]] = None
    samples_used: int = 0
    seed: int = 0
    elapsed_ms: float = 0.0
    detail: Optional[str] = None

    def __post_init__(self):
        if self.status not in _STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if self.witness is not None:
            self.witness = tuple(str(w) for w in self.witness)

    @property
    def ok(self) -> bool:
        return self.status in (PASS, INCONCLUSIVE)


@dataclass
class Report:
    seed: int
    checks: List[CheckResult] = field(default_factory=list)
    halted: bool = False

    def extend(self, results):
        self.checks.extend(results)

    def find(self, name: str) -> Optional[CheckResult]:
        for c in self.checks:
            if c.name == name:
                return c
        return None

    def __getitem__(self, name: str) -> CheckResult:
        c = self.find(name)
        if c is None:
            raise KeyError(name)
        return c

    @property
    def all_ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def exit_code(self) -> int:
        if any(c.status == HARD for c in self.checks):
            return EXIT_HARD
        if self.halted:
            return EXIT_PRECONDITION
        if any(c.status == FAIL for c in self.checks):
            return EXIT_FAIL
        return EXIT_OK


def render_json(report: Report) -> bytes:
    """Canonical JSON: stable keys, no volatile fields.

    elapsed_ms is serialized as 0 so that identical (session, seed) runs
    produce byte-identical output; wall-clock timings stay in the text
    rendering.
    """
    checks = []
    for c in report.checks:
        entry = {
            "name": c.name,
            "status": c.status,
            "samples_used": c.samples_used,
            "elapsed_ms": 0,
        }
        if c.witness is not None:
            entry["witness"] = list(c.witness)
        checks.append(entry)
    doc = {"version": 1, "seed": report.seed, "checks": checks}
    return (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n").encode()


def parse_json(data: bytes) -> Report:
    doc = json.loads(data.decode())
    report = Report(seed=doc["seed"])
    for entry in doc["checks"]:
        report.checks.append(
            CheckResult(
                name=entry["name"],
                status=entry["status"],
                witness=tuple(entry["witness"]) if "witness" in entry else None,
                samples_used=entry["samples_used"],
                seed=doc["seed"],
                elapsed_ms=entry.get("elapsed_ms", 0),
            )
        )
    return report


def render_text(report: Report) -> str:
    lines = []
    width = max((len(c.name) for c in report.checks), default=4)
    for c in report.checks:
        line = f"{c.name:<{width}}  {c.status:>18}  n={c.samples_used:<6} {c.elapsed_ms:8.1f}ms"
        if c.witness:
            line += "  witness: " + ", ".join(c.witness)
        if c.detail:
            line += f"  [{c.detail}]"
        lines.append(line)
    n = len(report.checks)
    if report.all_ok and not report.halted:
        lines.append(f"all {n} checks passed")
    else:
        bad = sum(1 for c in report.checks if not c.ok)
        lines.append(f"{bad} of {n} checks failed")
        if report.halted:
            lines.append("execution halted by a precondition violation")
    return "\n".join(lines) + "\n"
