"""Exhaustive oracle.

Assignments are enumerated as the integers ``0 .. 2**N - 1`` where bit
``v-1`` holds ``x_v``; the first satisfying one in that order is returned.
"""

from __future__ import annotations

import numpy as np

from ..cnf import CnfFormula
from .result import SolveResult, Status

DEFAULT_MAX_VARIABLES = 20
_CHUNK_BITS = 16


class OracleTooLarge(ValueError):
    """Raised instead of starting an exponential enumeration over the limit."""


def brute_force(formula: CnfFormula, max_variables: int = DEFAULT_MAX_VARIABLES) -> SolveResult:
    n = formula.num_variables
    if n > max_variables:
        raise OracleTooLarge(f"brute force refuses N={n} > limit {max_variables}")
    if any(len(c) == 0 for c in formula.clauses):
        return SolveResult(Status.UNSAT)
    total = 1 << n
    chunk = 1 << min(n, _CHUNK_BITS)
    for start in range(0, total, chunk):
        idx = np.arange(start, start + chunk, dtype=np.int64)
        ok = np.ones(chunk, dtype=bool)
        for clause in formula.clauses:
            sat = np.zeros(chunk, dtype=bool)
            for lit in clause:
                bit = ((idx >> (abs(lit) - 1)) & 1).astype(bool)
                sat |= bit if lit > 0 else ~bit
            ok &= sat
            if not ok.any():
                break
        hits = np.flatnonzero(ok)
        if hits.size:
            a = start + int(hits[0])
            model = {v: bool((a >> (v - 1)) & 1) for v in range(1, n + 1)}
            return SolveResult(Status.SAT, model=model)
    return SolveResult(Status.UNSAT)
