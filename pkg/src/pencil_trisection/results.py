"""Check outcomes and invariant reports, serialisable with a fixed key order."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

CERTIFIED = "HOMOLOGY-CERTIFIED"


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "details": self.details}


def format_h1(free_rank: int, torsion: list[int]) -> str:
    """Human-readable abelian group, e.g. '0', 'Z', 'Z^2+Z/2'."""
    parts = []
    if free_rank == 1:
        parts.append("Z")
    elif free_rank > 1:
        parts.append(f"Z^{free_rank}")
    parts += [f"Z/{d}" for d in torsion]
    return "+".join(parts) or "0"


@dataclass(frozen=True)
class InvariantReport:
    g: int
    k: int
    euler_diagram: int
    euler_pencil: int
    h1_diagram: tuple[int, tuple[int, ...]]
    h1_pencil: tuple[int, tuple[int, ...]]
    checks: tuple[CheckResult, ...]

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    @property
    def label(self) -> str:
        return CERTIFIED if self.overall else "FAILED"

    def to_dict(self) -> dict[str, Any]:
        return {
            "g": self.g,
            "k": self.k,
            "euler_diagram": self.euler_diagram,
            "euler_pencil": self.euler_pencil,
            "h1_diagram": {"free_rank": self.h1_diagram[0], "torsion": list(self.h1_diagram[1])},
            "h1_pencil": {"free_rank": self.h1_pencil[0], "torsion": list(self.h1_pencil[1])},
            "checks": [c.to_dict() for c in self.checks],
            "overall": self.overall,
            "status": self.label,
        }
