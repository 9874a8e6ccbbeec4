from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional


class Status(str, enum.Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class SolveBudget:
    """Resource limits for one solve.  ``None`` means unlimited."""

    max_conflicts: Optional[int] = None
    max_decisions: Optional[int] = None
    wall_time: Optional[float] = None  # seconds

    def __post_init__(self) -> None:
        for name in ("max_conflicts", "max_decisions", "wall_time"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ValueError(f"{name} must be positive when set, got {value}")


UNLIMITED = SolveBudget()


@dataclass(frozen=True)
class SolveResult:
    status: Status
    decisions: int = 0
    conflicts: int = 0
    model: Optional[dict[int, bool]] = None

    def __post_init__(self) -> None:
        if (self.status is Status.SAT) != (self.model is not None):
            raise ValueError("model must be present iff status is SAT")

    @property
    def is_sat(self) -> bool:
        return self.status is Status.SAT

    @property
    def is_unsat(self) -> bool:
        return self.status is Status.UNSAT

    def to_dict(self, with_model: bool = False) -> dict:
        out = {"status": self.status.value, "decisions": self.decisions, "conflicts": self.conflicts}
        if with_model and self.model is not None:
            out["model"] = [v if val else -v for v, val in sorted(self.model.items())]
        return out
