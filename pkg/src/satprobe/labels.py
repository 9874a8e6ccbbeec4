from __future__ import annotations

import enum
from typing import Union


class Decision(str, enum.Enum):
    """Ground-truth labels and predicted decisions.

    YES/NO are the affirmative/negative answers of the reduced problems and
    line up with SAT/UNSAT; ABSTAIN marks a missing or unparseable answer.
    """

    SAT = "SAT"
    UNSAT = "UNSAT"
    YES = "YES"
    NO = "NO"
    ABSTAIN = "ABSTAIN"

    @property
    def canonical(self) -> "Decision":
        if self is Decision.YES:
            return Decision.SAT
        if self is Decision.NO:
            return Decision.UNSAT
        return self

    @property
    def affirmative(self) -> bool:
        return self in (Decision.SAT, Decision.YES)


def as_decision(value: Union[str, Decision, bool]) -> Decision:
    """Accept Decision, its string value, solver status strings, or a bool (True = SAT)."""
    if isinstance(value, Decision):
        return value
    if isinstance(value, bool):
        return Decision.SAT if value else Decision.UNSAT
    text = str(getattr(value, "value", value)).strip().upper()
    aliases = {"SATISFIABLE": "SAT", "UNSATISFIABLE": "UNSAT", "UNKNOWN": "ABSTAIN", "TIMEOUT": "ABSTAIN"}
    return Decision(aliases.get(text, text))
