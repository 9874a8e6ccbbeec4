from __future__ import annotations

from ..cnf import Clause, CnfFormula


def pad_to_width3(formula: CnfFormula) -> list[Clause]:
    """Clauses of width 1 or 2 are filled up to 3 by repeating their first literal."""
    out = []
    for i, clause in enumerate(formula.clauses):
        if len(clause) == 3:
            out.append(clause)
        elif len(clause) in (1, 2):
            out.append(tuple(clause) + (clause[0],) * (3 - len(clause)))
        else:
            raise ValueError(f"clause {i} has width {len(clause)}; reductions need width 3 (1-2 are padded)")
    return out
