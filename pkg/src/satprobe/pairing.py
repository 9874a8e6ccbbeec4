"""SAT twins for verified-UNSAT formulas via ordered single edits.

Stages run in a fixed order: flip one literal's polarity, replace one literal
with a different variable (same clause width), delete one clause.  Each
stage tries every candidate location in a seeded random order and stops the
whole procedure at the first edit that yields SAT.  When a stage exhausts its
candidates, its first candidate is kept and the next stage works on the edited
formula, so a trace holds at most one edit per stage.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional, Sequence, Union

from .cnf import CnfFormula, clause_density
from .generator import (
    LOW_ALPHA_2SAT,
    LOW_ALPHA_3SAT,
    GenerationError,
    derive_seed,
    iter_unsat_low_alpha,
)
from .solver import SolveResult, Status, solve_2sat, solve_cdcl

log = logging.getLogger(__name__)

STAGES = ("flip", "replace", "delete")


@dataclass(frozen=True)
class FlipPolarity:
    clause: int
    position: int
    kind = "flip"

    def apply(self, formula: CnfFormula) -> CnfFormula:
        clauses = list(formula.clauses)
        c = list(clauses[self.clause])
        c[self.position] = -c[self.position]
        clauses[self.clause] = tuple(c)
        return formula.with_clauses(clauses)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "clause": self.clause, "position": self.position}


@dataclass(frozen=True)
class ReplaceLiteral:
    clause: int
    position: int
    variable: int
    polarity: bool
    kind = "replace"

    def apply(self, formula: CnfFormula) -> CnfFormula:
        clauses = list(formula.clauses)
        c = list(clauses[self.clause])
        c[self.position] = self.variable if self.polarity else -self.variable
        clauses[self.clause] = tuple(c)
        return formula.with_clauses(clauses)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "clause": self.clause,
            "position": self.position,
            "variable": self.variable,
            "polarity": self.polarity,
        }


@dataclass(frozen=True)
class DeleteClause:
    clause: int
    kind = "delete"

    def apply(self, formula: CnfFormula) -> CnfFormula:
        clauses = list(formula.clauses)
        del clauses[self.clause]
        return formula.with_clauses(clauses)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "clause": self.clause}


Edit = Union[FlipPolarity, ReplaceLiteral, DeleteClause]


def edit_from_dict(d: dict) -> Edit:
    kind = d["kind"]
    if kind == "flip":
        return FlipPolarity(d["clause"], d["position"])
    if kind == "replace":
        return ReplaceLiteral(d["clause"], d["position"], d["variable"], bool(d["polarity"]))
    if kind == "delete":
        return DeleteClause(d["clause"])
    raise ValueError(f"unknown edit kind {kind!r}")


def check_edit(formula: CnfFormula, edit: Edit) -> None:
    """Raise ``IndexError``/``ValueError`` when ``edit`` does not fit ``formula``."""
    if not 0 <= edit.clause < formula.num_clauses:
        raise IndexError(f"clause index {edit.clause} out of range")
    if isinstance(edit, (FlipPolarity, ReplaceLiteral)):
        if not 0 <= edit.position < len(formula.clauses[edit.clause]):
            raise IndexError(f"literal position {edit.position} out of range")
    if isinstance(edit, ReplaceLiteral) and not 1 <= edit.variable <= formula.num_variables:
        raise ValueError(f"variable {edit.variable} out of range")


def replay(formula: CnfFormula, edits: Sequence[Edit]) -> CnfFormula:
    for edit in edits:
        check_edit(formula, edit)
        formula = edit.apply(formula)
    return formula


@dataclass(frozen=True)
class InstancePair:
    unsat_formula: CnfFormula
    sat_formula: CnfFormula
    edits: tuple[Edit, ...]
    unsat_result: SolveResult
    sat_result: SolveResult
    seed: int = 0

    def __post_init__(self) -> None:
        if self.unsat_formula.num_variables != self.sat_formula.num_variables:
            raise ValueError("paired formulas must share N")
        if not 1 <= len(self.edits) <= 3:
            raise ValueError("edit trace must have 1..3 edits")

    @property
    def n(self) -> int:
        return self.unsat_formula.num_variables

    @property
    def alpha_unsat(self) -> Fraction:
        return clause_density(self.unsat_formula)

    @property
    def alpha_sat(self) -> Fraction:
        return clause_density(self.sat_formula)

    def verify(self, oracle: Optional[Callable[[CnfFormula], SolveResult]] = None) -> bool:
        """Re-check both labels, N, density gap and edit replay."""
        oracle = oracle or default_oracle(self.unsat_formula)
        return (
            oracle(self.unsat_formula).status is Status.UNSAT
            and oracle(self.sat_formula).status is Status.SAT
            and abs(self.alpha_unsat - self.alpha_sat) <= Fraction(1, self.n)
            and replay(self.unsat_formula, self.edits) == self.sat_formula
        )


class PairingError(RuntimeError):
    """No SAT twin within the three stages."""

    def __init__(self, message: str, stages_attempted: Sequence[str], candidates_tried: dict):
        super().__init__(message)
        self.stages_attempted = tuple(stages_attempted)
        self.candidates_tried = dict(candidates_tried)


def default_oracle(formula: CnfFormula) -> Callable[[CnfFormula], SolveResult]:
    return solve_2sat if formula.max_width <= 2 else solve_cdcl


def _flip_candidates(f: CnfFormula, rng: random.Random) -> list[Edit]:
    cands: list[Edit] = [FlipPolarity(i, j) for i, c in enumerate(f.clauses) for j in range(len(c))]
    rng.shuffle(cands)
    return cands


def _replace_candidates(f: CnfFormula, rng: random.Random) -> list[Edit]:
    slots = [(i, j) for i, c in enumerate(f.clauses) for j in range(len(c))]
    rng.shuffle(slots)
    cands: list[Edit] = []
    for i, j in slots:
        used = {abs(l) for l in f.clauses[i]}
        free = [v for v in range(1, f.num_variables + 1) if v not in used]
        if not free:
            continue
        cands.append(ReplaceLiteral(i, j, rng.choice(free), rng.random() < 0.5))
    return cands


def _delete_candidates(f: CnfFormula, rng: random.Random) -> list[Edit]:
    cands: list[Edit] = [DeleteClause(i) for i in range(f.num_clauses)]
    rng.shuffle(cands)
    return cands


_CANDIDATES = {"flip": _flip_candidates, "replace": _replace_candidates, "delete": _delete_candidates}


def make_sat_twin(
    unsat: CnfFormula,
    seed: int = 0,
    oracle: Optional[Callable[[CnfFormula], SolveResult]] = None,
) -> InstancePair:
    """Build the SAT twin of a verified-UNSAT formula; raises ``PairingError`` after three failed stages."""
    oracle = oracle or default_oracle(unsat)
    unsat_result = oracle(unsat)
    if unsat_result.status is not Status.UNSAT:
        raise ValueError(f"input formula is not certified UNSAT (solver says {unsat_result.status.value})")
    working = unsat
    trace: list[Edit] = []
    tried: dict[str, int] = {}
    for stage in STAGES:
        rng = random.Random(derive_seed(seed, "stage", stage))
        candidates = _CANDIDATES[stage](working, rng)
        tried[stage] = 0
        for edit in candidates:
            tried[stage] += 1
            edited = edit.apply(working)
            result = oracle(edited)
            if result.status is Status.SAT:
                return InstancePair(unsat, edited, (*trace, edit), unsat_result, result, seed)
        if candidates:
            trace.append(candidates[0])
            working = candidates[0].apply(working)
    raise PairingError(
        f"no SAT twin after stages {', '.join(tried)}", stages_attempted=list(tried), candidates_tried=tried
    )


@dataclass
class PairSet:
    """Verified pairs plus generation and pairing statistics.  Iterates over pairs."""

    n: int
    k: int
    seed: int
    pairs: list[InstancePair]
    alphas: list[float] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[InstancePair]:
        return iter(self.pairs)

    def __getitem__(self, i: int) -> InstancePair:
        return self.pairs[i]


def build_pair_set(
    n: int,
    count: int,
    alpha_choices: Optional[Sequence[float]] = None,
    seed: int = 0,
    k: int = 3,
) -> PairSet:
    """Draw verified-UNSAT formulas and pair each with its SAT twin.

    Formulas for which all three stages fail are skipped and counted in
    ``stats['pairing_failures']``; the returned set always holds ``count`` pairs.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if k not in (2, 3):
        raise ValueError("k must be 2 or 3")
    if alpha_choices is None:
        alpha_choices = LOW_ALPHA_2SAT if k == 2 else LOW_ALPHA_3SAT
    oracle = solve_2sat if k == 2 else solve_cdcl
    pairs: list[InstancePair] = []
    alphas: list[float] = []
    failures: list[dict] = []
    edit_lengths = {1: 0, 2: 0, 3: 0}
    edit_kinds = {s: 0 for s in STAGES}
    attempts = 0
    stream = iter_unsat_low_alpha(n, alpha_choices, derive_seed(seed, "unsat"), k)
    try:
        for inst, attempts, _ in stream:
            pair_seed = derive_seed(seed, "twin", len(pairs) + len(failures))
            try:
                pair = make_sat_twin(inst.formula, pair_seed, oracle)
            except PairingError as exc:
                log.warning("pairing failed for draw %d: %s", attempts, exc)
                failures.append({"seed": inst.seed, "alpha": inst.alpha, "stages": list(exc.stages_attempted)})
                continue
            pairs.append(pair)
            alphas.append(inst.alpha)
            edit_lengths[len(pair.edits)] += 1
            edit_kinds[pair.edits[-1].kind] += 1
            if len(pairs) == count:
                break
    except GenerationError as exc:
        exc.stats.update(pairs_built=len(pairs), pairing_failures=len(failures))
        raise
    stats = {
        "unsat_draws": attempts,
        "pairing_failures": len(failures),
        "failed_draws": failures,
        "trace_lengths": {str(k_): v for k_, v in edit_lengths.items()},
        "final_edit_kind": edit_kinds,
    }
    return PairSet(n=n, k=k, seed=seed, pairs=pairs, alphas=alphas, stats=stats)
