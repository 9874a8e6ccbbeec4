"""Instrumented CDCL solver.

Two watched literals, first-UIP learning with non-chronological backjumping,
VSIDS-style activities (ties broken towards the lowest variable index),
phase saving with an initial ``false`` phase, and geometric restarts.

Counters: ``decisions`` counts free branching assignments only; forced
(propagated) assignments are not decisions.  ``conflicts`` counts every
falsified clause met during propagation, including a refutation at level 0.
"""

from __future__ import annotations

import time
from typing import Optional

from ..cnf import CnfFormula
from .result import UNLIMITED, SolveBudget, SolveResult, Status

VAR_DECAY = 0.95
RESTART_FIRST = 100
RESTART_GROWTH = 1.5
_RESCALE_LIMIT = 1e100


class CdclSolver:
    """Single-use solver state for one formula.

    Literals are encoded as ``2*v`` (positive) and ``2*v + 1`` (negative) for a
    0-based variable ``v``; ``lit ^ 1`` negates.
    """

    def __init__(self, formula: CnfFormula, budget: SolveBudget = UNLIMITED):
        self.formula = formula
        self.budget = budget
        n = formula.num_variables
        self.n = n
        self.lval = [0] * (2 * n)  # 1 true, -1 false, 0 unassigned
        self.level = [0] * n
        self.reason: list[Optional[list[int]]] = [None] * n
        self.activity = [0.0] * n
        self.phase = [1] * n  # 1 -> branch on the negative literal first
        self.watches: list[list[list[int]]] = [[] for _ in range(2 * n)]
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.var_inc = 1.0
        self.decisions = 0
        self.conflicts = 0
        self.learnts = 0
        self.units: list[int] = []
        self.trivially_unsat = False
        occurring: set[int] = set()
        for clause in formula.clauses:
            lits: list[int] = []
            tautology = False
            for d in clause:
                code = 2 * (abs(d) - 1) + (d < 0)
                if code ^ 1 in lits:
                    tautology = True
                    break
                if code not in lits:
                    lits.append(code)
            if tautology:
                continue
            occurring.update(l >> 1 for l in lits)
            if not lits:
                self.trivially_unsat = True
            elif len(lits) == 1:
                self.units.append(lits[0])
            else:
                self._attach(lits)
        # variables that never occur are left at the default (false) without a decision
        self.candidates = sorted(occurring)

    def _attach(self, clause: list[int]) -> None:
        self.watches[clause[0]].append(clause)
        self.watches[clause[1]].append(clause)

    def _enqueue(self, lit: int, reason: Optional[list[int]]) -> None:
        lval = self.lval
        lval[lit] = 1
        lval[lit ^ 1] = -1
        v = lit >> 1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    def _propagate(self) -> Optional[list[int]]:
        lval = self.lval
        watches = self.watches
        trail = self.trail
        while self.qhead < len(trail):
            p = trail[self.qhead]
            self.qhead += 1
            false_lit = p ^ 1
            ws = watches[false_lit]
            i = j = 0
            end = len(ws)
            while i < end:
                c = ws[i]
                i += 1
                if c[0] == false_lit:
                    c[0] = c[1]
                    c[1] = false_lit
                first = c[0]
                if lval[first] == 1:
                    ws[j] = c
                    j += 1
                    continue
                for k in range(2, len(c)):
                    lk = c[k]
                    if lval[lk] != -1:
                        c[1] = lk
                        c[k] = false_lit
                        watches[lk].append(c)
                        break
                else:
                    ws[j] = c
                    j += 1
                    if lval[first] == -1:
                        while i < end:
                            ws[j] = ws[i]
                            j += 1
                            i += 1
                        del ws[j:]
                        return c
                    self._enqueue(first, c)
            del ws[j:]
        return None

    def _bump(self, v: int) -> None:
        act = self.activity
        act[v] += self.var_inc
        if act[v] > _RESCALE_LIMIT:
            for u in range(self.n):
                act[u] *= 1e-100
            self.var_inc *= 1e-100

    def _analyze(self, confl: list[int]) -> tuple[list[int], int]:
        seen = [False] * self.n
        level = self.level
        reason = self.reason
        trail = self.trail
        current = len(self.trail_lim)
        learnt = [-1]
        path = 0
        p = -1
        idx = len(trail) - 1
        c: list[int] = confl
        while True:
            for q in (c if p < 0 else c[1:]):
                v = q >> 1
                if not seen[v] and level[v] > 0:
                    seen[v] = True
                    self._bump(v)
                    if level[v] >= current:
                        path += 1
                    else:
                        learnt.append(q)
            while not seen[trail[idx] >> 1]:
                idx -= 1
            p = trail[idx]
            idx -= 1
            v = p >> 1
            seen[v] = False
            path -= 1
            if path == 0:
                break
            c = reason[v]  # type: ignore[assignment]
        learnt[0] = p ^ 1
        if len(learnt) == 1:
            return learnt, 0
        # second watch goes on the literal with the highest remaining level
        best = 1
        for i in range(2, len(learnt)):
            if level[learnt[i] >> 1] > level[learnt[best] >> 1]:
                best = i
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, level[learnt[1] >> 1]

    def _cancel_until(self, lvl: int) -> None:
        if len(self.trail_lim) <= lvl:
            return
        lval = self.lval
        start = self.trail_lim[lvl]
        for lit in self.trail[start:]:
            lval[lit] = 0
            lval[lit ^ 1] = 0
            v = lit >> 1
            self.phase[v] = lit & 1
            self.reason[v] = None
        del self.trail[start:]
        del self.trail_lim[lvl:]
        self.qhead = start

    def _pick_branch(self) -> int:
        lval = self.lval
        act = self.activity
        best = -1
        best_act = -1.0
        for v in self.candidates:
            if lval[2 * v] == 0 and act[v] > best_act:
                best = v
                best_act = act[v]
        return best

    def _result(self, status: Status) -> SolveResult:
        model = None
        if status is Status.SAT:
            model = {v + 1: self.lval[2 * v] == 1 for v in range(self.n)}
        return SolveResult(status, self.decisions, self.conflicts, model)

    def solve(self) -> SolveResult:
        if self.trivially_unsat:
            self.conflicts += 1
            return self._result(Status.UNSAT)
        for lit in self.units:
            if self.lval[lit] == -1:
                self.conflicts += 1
                return self._result(Status.UNSAT)
            if self.lval[lit] == 0:
                self._enqueue(lit, None)

        budget = self.budget
        deadline = None if budget.wall_time is None else time.perf_counter() + budget.wall_time
        restart_limit = float(RESTART_FIRST)
        since_restart = 0
        ticks = 0
        while True:
            ticks += 1
            if deadline is not None and ticks % 64 == 0 and time.perf_counter() > deadline:
                return self._result(Status.UNKNOWN)
            confl = self._propagate()
            if confl is not None:
                self.conflicts += 1
                since_restart += 1
                if not self.trail_lim:
                    return self._result(Status.UNSAT)
                learnt, back = self._analyze(confl)
                self._cancel_until(back)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    self._attach(learnt)
                    self.learnts += 1
                    self._enqueue(learnt[0], learnt)
                self.var_inc /= VAR_DECAY
                if budget.max_conflicts is not None and self.conflicts >= budget.max_conflicts:
                    return self._result(Status.UNKNOWN)
                continue

            if since_restart >= restart_limit:
                since_restart = 0
                restart_limit *= RESTART_GROWTH
                self._cancel_until(0)
                continue
            v = self._pick_branch()
            if v < 0:
                return self._result(Status.SAT)
            if budget.max_decisions is not None and self.decisions >= budget.max_decisions:
                return self._result(Status.UNKNOWN)
            self.decisions += 1
            self.trail_lim.append(len(self.trail))
            self._enqueue(2 * v + self.phase[v], None)


def solve_cdcl(formula: CnfFormula, budget: SolveBudget = UNLIMITED) -> SolveResult:
    """Decide ``formula`` with the CDCL solver; deterministic for a fixed input."""
    return CdclSolver(formula, budget).solve()
