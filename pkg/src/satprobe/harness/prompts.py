"""Prompt templates for the three instance representations."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from string import Template
from typing import Union

from ..cnf import CnfFormula, emit_dimacs
from ..reductions import PackingInstance, VertexCoverInstance


class Representation(str, enum.Enum):
    CNF = "cnf"
    VERTEX_COVER = "vc"
    PACKING = "packing"


Instance = Union[CnfFormula, VertexCoverInstance, PackingInstance]

_TYPES = {
    Representation.CNF: CnfFormula,
    Representation.VERTEX_COVER: VertexCoverInstance,
    Representation.PACKING: PackingInstance,
}


def representation_of(instance: Instance) -> Representation:
    for rep, cls in _TYPES.items():
        if isinstance(instance, cls):
            return rep
    raise TypeError(f"unsupported instance type {type(instance).__name__}")


def _compact(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), sort_keys=False)


def render_instance(instance: Instance) -> str:
    """Instance body as placed into a prompt."""
    rep = representation_of(instance)
    if rep is Representation.CNF:
        return (
            f"{instance.to_text()}\n\n"
            f"DIMACS:\n{emit_dimacs(instance)}"
        )
    if rep is Representation.VERTEX_COVER:
        body = {"vertices": instance.labels, "edges": [list(e) for e in instance.edges], "k": instance.k}
        return _compact(body)
    body = {
        "bounding_box": list(instance.bounding_box),
        "rods": [{"id": r.id, "cells": [list(c) for c in r.cells], "capacity": r.capacity} for r in instance.rods],
        "tokens": [{"id": t.id, "allowed": list(t.allowed)} for t in instance.tokens],
    }
    return _compact(body)


@dataclass(frozen=True)
class PromptTemplate:
    """``text`` holds exactly one ``$instance`` placeholder (``$width`` is optional)."""

    representation: Representation
    text: str

    def __post_init__(self) -> None:
        if self.text.count("$instance") != 1:
            raise ValueError("template must contain the $instance placeholder exactly once")

    def render(self, instance: Instance) -> str:
        rep = representation_of(instance)
        if rep is not self.representation:
            raise ValueError(f"{rep.value} instance given to a {self.representation.value} template")
        width = instance.max_width if isinstance(instance, CnfFormula) else 3
        return Template(self.text).substitute(instance=render_instance(instance), width=width)


CNF_TEMPLATE = PromptTemplate(
    Representation.CNF,
    """Decide whether the $width-CNF formula below can be satisfied.
Reason it through as a backtracking search would, then state:
- the verdict, SATISFIABLE or UNSATISFIABLE
- how many times you branched on a variable
- how many dead ends (conflicts) made you backtrack
For a SATISFIABLE verdict, list a value for every variable.
The last line of your reply must be strict JSON of the form
{"decision": "SATISFIABLE" or "UNSATISFIABLE", "branches": <int>, "conflicts": <int>, "assignment": {"x1": true, ...}}
Formula:
$instance""",
)

VERTEX_COVER_TEMPLATE = PromptTemplate(
    Representation.VERTEX_COVER,
    """You are solving a Vertex Cover decision problem.
The graph is given as JSON with vertex labels, an edge list and a budget k.
Question: is there a cover of size <= k, i.e. a set of at most k vertices touching every edge?
Answer YES or NO. If YES, output a cover.
Finish with one line of strict JSON:
{"decision": "YES" or "NO", "cover": ["<vertex>", ...]}
Instance: $instance""",
)

PACKING_TEMPLATE = PromptTemplate(
    Representation.PACKING,
    'You are solving a discrete 3D packing problem. Rods occupy grid cells; pick exactly one rod per '
    'variable so that the picked rods share no cell, then put every token into a free slot (1..capacity) '
    'of a picked rod listed in its "allowed" set. Question: can all tokens be placed? Answer YES or NO and, '
    'if YES, give the placement. Reply with one line of strict JSON: {"decision": "YES" or "NO", '
    '"selected_rods": ["<rod>", ...], "placements": {"<token>": ["<rod>", <slot>], ...}} Instance: $instance',
)

DEFAULT_TEMPLATES = {
    Representation.CNF: CNF_TEMPLATE,
    Representation.VERTEX_COVER: VERTEX_COVER_TEMPLATE,
    Representation.PACKING: PACKING_TEMPLATE,
}


def build_prompt(instance: Instance, template: PromptTemplate = None) -> str:
    template = template or DEFAULT_TEMPLATES[representation_of(instance)]
    return template.render(instance)
