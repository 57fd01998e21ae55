"""Verification reports: one outcome per requested check, with the
dimension tables that were compared and a machine-readable serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

STATUSES = ("pass", "fail", "skipped", "hypothesis-violated",
            "inconclusive")


@dataclass
class CheckOutcome:
    check: str
    status: str
    lhs: dict = dc_field(default_factory=dict)   # name -> list of dims
    rhs: dict = dc_field(default_factory=dict)
    notes: list = dc_field(default_factory=list)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")


@dataclass
class VerificationReport:
    algebra: str
    field: str
    n_max: int
    checks: list

    @property
    def exit_code(self) -> int:
        return 1 if any(c.status == "fail" for c in self.checks) else 0

    def to_json_bytes(self) -> bytes:
        doc = {
            "algebra": self.algebra,
            "field": self.field,
            "n_max": self.n_max,
            "checks": [
                {
                    "check": c.check,
                    "status": c.status,
                    "lhs": {k: list(v) for k, v in sorted(c.lhs.items())},
                    "rhs": {k: list(v) for k, v in sorted(c.rhs.items())},
                    "notes": list(c.notes),
                }
                for c in self.checks
            ],
        }
        return (json.dumps(doc, indent=2, sort_keys=False) + "\n").encode()

    @staticmethod
    def from_json_bytes(data: bytes) -> "VerificationReport":
        doc = json.loads(data.decode())
        checks = [
            CheckOutcome(c["check"], c["status"],
                         {k: list(v) for k, v in c["lhs"].items()},
                         {k: list(v) for k, v in c["rhs"].items()},
                         list(c["notes"]))
            for c in doc["checks"]
        ]
        return VerificationReport(doc["algebra"], doc["field"],
                                  doc["n_max"], checks)

    def to_table(self) -> str:
        lines = [f"algebra: {self.algebra}   field: {self.field}   "
                 f"n_max: {self.n_max}"]
        width = max([len("check")] + [len(c.check) for c in self.checks])
        swidth = max([len("status")] + [len(c.status)
                                        for c in self.checks])
        lines.append(f"{'check':<{width}}  {'status':<{swidth}}  detail")
        lines.append("-" * (width + swidth + 30))
        for c in self.checks:
            detail = []
            for k in sorted(set(c.lhs) | set(c.rhs)):
                l, r = c.lhs.get(k), c.rhs.get(k)
                if l is not None and r is not None and l != r:
                    detail.append(f"{k}: {l} != {r}")
                elif l is not None:
                    detail.append(f"{k}: {l}")
                elif r is not None:
                    detail.append(f"{k}: {r}")
            for note in c.notes:
                detail.append(note)
            first = detail[0] if detail else ""
            lines.append(f"{c.check:<{width}}  {c.status:<{swidth}}  "
                         f"{first}".rstrip())
            for extra in detail[1:]:
                lines.append(f"{'':<{width}}  {'':<{swidth}}  {extra}")
        return "\n".join(lines) + "\n"
