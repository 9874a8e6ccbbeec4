"""3-CNF to a discrete rod/token packing problem.

Variable ``i`` owns two rods on the grid column ``x = i``.  The true-rod
occupies ``(i, 0, z)`` for ``z = 0..m`` and the false-rod occupies
``(i, 1, z)`` for ``z = 1..m`` plus the shared base cell ``(i, 0, 0)``, so at
most one of them fits.  Each rod offers ``m`` slots.  Clause ``j`` becomes a
token that may only sit on the rods of its literals.  A packing selects one
rod per variable with pairwise disjoint footprints and places every token in
a free slot of a selected, allowed rod.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Optional

from ..cnf import CnfFormula, evaluate
from .common import pad_to_width3

Cell = tuple[int, int, int]

MAX_BRUTE_VARIABLES = 20
MAX_BRUTE_TOKENS = 32


def rod_id(variable: int, value: bool) -> str:
    return f"x{variable}:{'T' if value else 'F'}"


def token_id(clause: int) -> str:
    return f"c{clause}"


@dataclass(frozen=True)
class Rod:
    id: str
    variable: int
    value: bool
    cells: tuple[Cell, ...]
    capacity: int

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "variable": self.variable,
            "value": self.value,
            "cells": [list(c) for c in self.cells],
            "capacity": self.capacity,
        }


@dataclass(frozen=True)
class Token:
    id: str
    clause: int
    allowed: tuple[str, ...]

    def to_dict(self) -> dict:
        return {"id": self.id, "clause": self.clause, "allowed": list(self.allowed)}


@dataclass(frozen=True)
class PackingInstance:
    num_variables: int
    rods: tuple[Rod, ...]
    tokens: tuple[Token, ...]
    bounding_box: tuple[int, int, int]  # exclusive upper corner; cells lie in [0, bx) x [0, by) x [0, bz)

    def __post_init__(self) -> None:
        ids = {r.id for r in self.rods}
        if len(ids) != len(self.rods):
            raise ValueError("duplicate rod ids")
        for t in self.tokens:
            if not t.allowed:
                raise ValueError(f"token {t.id} has an empty allowed-rod set")
            missing = [r for r in t.allowed if r not in ids]
            if missing:
                raise ValueError(f"token {t.id} references unknown rods {missing}")

    @property
    def rod_map(self) -> dict[str, Rod]:
        return {r.id: r for r in self.rods}

    def rods_of(self, variable: int) -> list[Rod]:
        return [r for r in self.rods if r.variable == variable]

    def to_dict(self) -> dict:
        return {
            "num_variables": self.num_variables,
            "rods": [r.to_dict() for r in self.rods],
            "tokens": [t.to_dict() for t in self.tokens],
            "bounding_box": list(self.bounding_box),
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "PackingInstance":
        rods = tuple(
            Rod(r["id"], int(r["variable"]), bool(r["value"]), tuple(tuple(c) for c in r["cells"]), int(r["capacity"]))
            for r in d["rods"]
        )
        tokens = tuple(Token(t["id"], int(t["clause"]), tuple(t["allowed"])) for t in d["tokens"])
        return cls(int(d["num_variables"]), rods, tokens, tuple(d["bounding_box"]))


@dataclass(frozen=True)
class PackingWitness:
    selected_rods: tuple[str, ...]
    placements: Mapping[str, tuple[str, int]] = field(default_factory=dict)  # token -> (rod, slot)

    def to_dict(self) -> dict:
        return {
            "selected_rods": list(self.selected_rods),
            "placements": {t: [r, s] for t, (r, s) in sorted(self.placements.items())},
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "PackingWitness":
        placements = {str(t): (str(p[0]), int(p[1])) for t, p in dict(d.get("placements", {})).items()}
        return cls(tuple(str(r) for r in d["selected_rods"]), placements)


def to_packing(formula: CnfFormula) -> PackingInstance:
    clauses = pad_to_width3(formula)
    m = len(clauses)
    rods = []
    for i in range(1, formula.num_variables + 1):
        true_cells = tuple((i, 0, z) for z in range(0, m + 1))
        false_cells = ((i, 0, 0),) + tuple((i, 1, z) for z in range(1, m + 1))
        rods.append(Rod(rod_id(i, True), i, True, true_cells, m))
        rods.append(Rod(rod_id(i, False), i, False, false_cells, m))
    tokens = []
    for j, clause in enumerate(clauses):
        allowed = tuple(dict.fromkeys(rod_id(abs(l), l > 0) for l in clause))
        tokens.append(Token(token_id(j), j, allowed))
    return PackingInstance(formula.num_variables, tuple(rods), tuple(tokens), (formula.num_variables + 1, 2, m + 1))


def check_packing(instance: PackingInstance, witness: PackingWitness) -> bool:
    """Validate rod selection and token placement.

    (a) exactly one selected rod per variable, (b) selected footprints
    pairwise disjoint, (c) every token sits on a selected rod from its
    allowed set, (d) slots within ``1..capacity`` and never shared.
    Dangling rod or token references raise ``ValueError``.
    """
    rods = instance.rod_map
    tokens = {t.id: t for t in instance.tokens}
    for r in witness.selected_rods:
        if r not in rods:
            raise ValueError(f"unknown rod {r!r}")
    for t, (r, _) in witness.placements.items():
        if t not in tokens:
            raise ValueError(f"unknown token {t!r}")
        if r not in rods:
            raise ValueError(f"unknown rod {r!r}")

    selected = set(witness.selected_rods)
    if len(selected) != len(witness.selected_rods):
        return False
    per_var: dict[int, int] = {}
    for r in selected:
        per_var[rods[r].variable] = per_var.get(rods[r].variable, 0) + 1
    if any(per_var.get(v, 0) != 1 for v in range(1, instance.num_variables + 1)):
        return False
    occupied: set[Cell] = set()
    for r in selected:
        cells = set(rods[r].cells)
        if occupied & cells:
            return False
        occupied |= cells
    used_slots: set[tuple[str, int]] = set()
    for t in instance.tokens:
        if t.id not in witness.placements:
            return False
        r, slot = witness.placements[t.id]
        if r not in selected or r not in t.allowed:
            return False
        if not 1 <= slot <= rods[r].capacity or (r, slot) in used_slots:
            return False
        used_slots.add((r, slot))
    return True


def packing_from_assignment(formula: CnfFormula, sigma: Mapping[int, bool]) -> PackingWitness:
    """Select the rod matching each variable's value; put each token on its first true literal's rod."""
    if not evaluate(formula, sigma):
        raise ValueError("assignment does not satisfy the formula")
    selected = tuple(rod_id(v, sigma[v]) for v in range(1, formula.num_variables + 1))
    fill: dict[str, int] = {}
    placements = {}
    for j, clause in enumerate(pad_to_width3(formula)):
        lit = next(l for l in clause if sigma[abs(l)] == (l > 0))
        r = rod_id(abs(lit), lit > 0)
        fill[r] = fill.get(r, 0) + 1
        placements[token_id(j)] = (r, fill[r])
    return PackingWitness(selected, placements)


def _place_tokens(tokens: list[tuple[str, ...]], free: dict[str, int]) -> bool:
    if not tokens:
        return True
    first, rest = tokens[0], tokens[1:]
    for r in first:
        if free.get(r, 0) > 0:
            free[r] -= 1
            if _place_tokens(rest, free):
                return True
            free[r] += 1
    return False


def packing_brute_force(instance: PackingInstance) -> bool:
    """Exact feasibility by enumerating every one-rod-per-variable selection."""
    if instance.num_variables > MAX_BRUTE_VARIABLES:
        raise ValueError(f"{instance.num_variables} variables exceeds the limit {MAX_BRUTE_VARIABLES}")
    if len(instance.tokens) > MAX_BRUTE_TOKENS:
        raise ValueError(f"{len(instance.tokens)} tokens exceeds the limit {MAX_BRUTE_TOKENS}")
    groups = [instance.rods_of(v) for v in range(1, instance.num_variables + 1)]
    for selection in itertools.product(*groups):
        occupied: set[Cell] = set()
        clash = False
        for rod in selection:
            cells = set(rod.cells)
            if occupied & cells:
                clash = True
                break
            occupied |= cells
        if clash:
            continue
        chosen = {rod.id for rod in selection}
        options = [tuple(r for r in t.allowed if r in chosen) for t in instance.tokens]
        if any(not o for o in options):
            continue
        options.sort(key=len)
        if _place_tokens(options, {rod.id: rod.capacity for rod in selection}):
            return True
    return False
