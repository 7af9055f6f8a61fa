"""Verification reports and their JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import __version__

PROVED = "Proved"
REALIZED_ONLY = "RealizedOnly"
NOT_PROVED = "NotProved"
FAILED = "Failed"

# increasing severity; Failed means a realized check refuted the statement
STATUS_ORDER = (PROVED, REALIZED_ONLY, NOT_PROVED, FAILED)

ENGINE_VERSION = f"mforge {__version__}"

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["g", "engine_version", "statements", "summary"],
    "properties": {
        "g": {"type": "integer"},
        "engine_version": {"type": "string"},
        "statements": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "paper_ref", "status", "lhs_normal", "rhs_normal", "elapsed_ms"],
                "properties": {
                    "id": {"type": "string"},
                    "paper_ref": {"type": "string"},
                    "status": {"enum": list(STATUS_ORDER)},
                    "lhs_normal": {"type": "string"},
                    "rhs_normal": {"type": "string"},
                    "elapsed_ms": {"type": "number"},
                },
            },
        },
        "summary": {
            "type": "object",
            "required": ["proved", "failed", "not_proved"],
            "properties": {
                "proved": {"type": "integer"},
                "failed": {"type": "integer"},
                "not_proved": {"type": "integer"},
                "realized_only": {"type": "integer"},
            },
        },
    },
}


@dataclass(frozen=True)
class StatementResult:
    id: str
    status: str
    paper_ref: str = ""
    lhs_normal: str = ""
    rhs_normal: str = ""
    elapsed_ms: float = 0.0

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "id": self.id,
            "paper_ref": self.paper_ref,
            "status": self.status,
            "lhs_normal": self.lhs_normal,
            "rhs_normal": self.rhs_normal,
            "elapsed_ms": round(self.elapsed_ms, 3) if timing else 0.0,
        }
        return out


@dataclass
class VerificationReport:
    g: int
    statements: list[StatementResult] = field(default_factory=list)

    def add(self, result: StatementResult) -> None:
        self.statements.append(result)

    def extend(self, other: "VerificationReport") -> None:
        self.statements.extend(other.statements)

    def count(self, status: str) -> int:
        return sum(1 for s in self.statements if s.status == status)

    @property
    def summary(self) -> dict:
        return {
            "proved": self.count(PROVED),
            "failed": self.count(FAILED),
            "not_proved": self.count(NOT_PROVED),
            "realized_only": self.count(REALIZED_ONLY),
        }

    @property
    def ok(self) -> bool:
        return all(s.status in (PROVED, REALIZED_ONLY) for s in self.statements)

    def by_id(self, sid: str) -> StatementResult:
        for s in self.statements:
            if s.id == sid:
                return s
        raise KeyError(sid)

    def worst(self) -> str:
        if not self.statements:
            return PROVED
        return max((s.status for s in self.statements), key=STATUS_ORDER.index)

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "g": self.g,
            "engine_version": ENGINE_VERSION,
            "statements": [s.to_dict(timing) for s in self.statements],
            "summary": self.summary,
        }

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"g = {self.g}  ({ENGINE_VERSION})"]
        for s in self.statements:
            lines.append(f"  {s.status:<12} {s.id}")
            if s.status != PROVED:
                lines.append(f"      lhs: {s.lhs_normal}")
                lines.append(f"      rhs: {s.rhs_normal}")
        sm = self.summary
        lines.append(
            f"  summary: {sm['proved']} proved, {sm['realized_only']} realized only, "
            f"{sm['not_proved']} not proved, {sm['failed']} failed"
        )
        return "\n".join(lines)
