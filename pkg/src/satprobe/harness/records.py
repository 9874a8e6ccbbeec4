"""Evaluation items, persisted records and witness validation."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence, Union

from ..cnf import CnfFormula, evaluate
from ..labels import Decision, as_decision
from ..reductions import (
    PackingInstance,
    PackingWitness,
    VertexCoverInstance,
    check_cover,
    check_packing,
    to_packing,
    to_vertex_cover,
)
from ..solver import Status
from .parsing import Prediction
from .prompts import Instance, Representation


@dataclass(frozen=True)
class EvalItem:
    """One labeled instance to send to a backend.

    ``formula`` is the source CNF (for VC and packing items it is the formula
    the instance was reduced from); scripted clients answer from it.
    """

    instance_id: str
    representation: Representation
    instance: Instance
    label: Decision
    formula: CnfFormula
    pair_id: Optional[str] = None
    n: Optional[int] = None
    alpha: Optional[float] = None
    k: Optional[int] = None

    def __post_init__(self) -> None:
        if self.label.canonical not in (Decision.SAT, Decision.UNSAT):
            raise ValueError(f"item {self.instance_id} needs a SAT/UNSAT label, got {self.label}")


def reduce_formula(formula: CnfFormula, representation: Union[Representation, str]) -> Instance:
    rep = Representation(representation)
    if rep is Representation.CNF:
        return formula
    if rep is Representation.VERTEX_COVER:
        return to_vertex_cover(formula)
    return to_packing(formula)


def items_from_pairs(pairs, representation: Union[Representation, str], alphas: Sequence[float] = ()) -> list[EvalItem]:
    """Two items per pair, ids ``p007-sat`` / ``p007-unsat``.

    ``pairs`` may be a ``PairSet`` (its drawn alphas are used) or any sequence
    of ``InstancePair``.
    """
    rep = Representation(representation)
    alphas = list(alphas or getattr(pairs, "alphas", ()) or ())
    pairs = list(pairs)
    width = max(3, len(str(len(pairs) - 1)))
    items = []
    for i, pair in enumerate(pairs):
        pid = f"p{i:0{width}d}"
        alpha = alphas[i] if i < len(alphas) else float(pair.alpha_unsat)
        k = pair.unsat_formula.max_width
        for label, formula in ((Decision.SAT, pair.sat_formula), (Decision.UNSAT, pair.unsat_formula)):
            items.append(
                EvalItem(
                    instance_id=f"{pid}-{label.value.lower()}",
                    representation=rep,
                    instance=reduce_formula(formula, rep),
                    label=label,
                    formula=formula,
                    pair_id=pid,
                    n=pair.n,
                    alpha=alpha,
                    k=k,
                )
            )
    return items


def items_from_instances(instances, representation: Union[Representation, str]) -> list[EvalItem]:
    """Items from solver-labeled ``GeneratedInstance`` objects; ids ``i0000``, ``i0001`` ..."""
    rep = Representation(representation)
    instances = list(instances)
    width = max(4, len(str(len(instances) - 1)))
    items = []
    for i, inst in enumerate(instances):
        if inst.result.status is Status.UNKNOWN:
            raise ValueError(f"instance {i} has no certified label")
        items.append(
            EvalItem(
                instance_id=f"i{i:0{width}d}",
                representation=rep,
                instance=reduce_formula(inst.formula, rep),
                label=as_decision(inst.result.status.value),
                formula=inst.formula,
                n=inst.formula.num_variables,
                alpha=inst.alpha,
                k=inst.formula.max_width,
            )
        )
    return items


@dataclass
class EvaluationRecord:
    instance_id: str
    representation: Representation
    true_label: Decision
    prediction: Prediction
    witness_valid: Optional[bool] = None
    witness_reason: Optional[str] = None
    pair_id: Optional[str] = None
    model: str = ""
    n: Optional[int] = None
    alpha: Optional[float] = None
    k: Optional[int] = None
    attempts: int = 1
    meta: dict = field(default_factory=dict)

    @property
    def correct(self) -> bool:
        return self.prediction.decision.canonical is self.true_label.canonical

    def to_dict(self) -> dict:
        return {
            "instance_id": self.instance_id,
            "representation": self.representation.value,
            "true_label": self.true_label.value,
            "prediction": self.prediction.to_dict(),
            "witness_valid": self.witness_valid,
            "witness_reason": self.witness_reason,
            "pair_id": self.pair_id,
            "model": self.model,
            "n": self.n,
            "alpha": self.alpha,
            "k": self.k,
            "attempts": self.attempts,
            "meta": self.meta,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "EvaluationRecord":
        rep = Representation(d["representation"])
        return cls(
            instance_id=d["instance_id"],
            representation=rep,
            true_label=Decision(d["true_label"]),
            prediction=Prediction.from_dict(d["prediction"], rep),
            witness_valid=d.get("witness_valid"),
            witness_reason=d.get("witness_reason"),
            pair_id=d.get("pair_id"),
            model=d.get("model", ""),
            n=d.get("n"),
            alpha=d.get("alpha"),
            k=d.get("k"),
            attempts=d.get("attempts", 1),
            meta=d.get("meta") or {},
        )


def check_witness(witness, instance: Instance) -> tuple[bool, Optional[str]]:
    """(valid, reason) for a parsed witness against the instance it answers."""
    if isinstance(instance, CnfFormula):
        if not isinstance(witness, dict):
            return False, "witness is not an assignment"
        n = instance.num_variables
        unknown = sorted(v for v in witness if not 1 <= v <= n)
        if unknown:
            return False, f"unknown variables {unknown}"
        missing = [v for v in range(1, n + 1) if v not in witness]
        if missing:
            return False, f"unassigned variables {missing}"
        return (True, None) if evaluate(instance, witness) else (False, "assignment falsifies a clause")
    try:
        if isinstance(instance, VertexCoverInstance):
            if not isinstance(witness, (set, frozenset)):
                return False, "witness is not a vertex set"
            if len(witness) > instance.k:
                return False, f"cover has {len(witness)} vertices, budget is {instance.k}"
            return (True, None) if check_cover(instance, witness) else (False, "an edge is uncovered")
        if isinstance(instance, PackingInstance):
            if not isinstance(witness, PackingWitness):
                return False, "witness is not a packing"
            return (True, None) if check_packing(instance, witness) else (False, "packing constraints violated")
    except ValueError as exc:
        return False, str(exc)
    raise TypeError(f"unsupported instance type {type(instance).__name__}")


def validate_witness(record: EvaluationRecord, instance: Instance) -> Optional[bool]:
    """Check the record's witness and store the outcome on the record.

    Returns None (and leaves the record untouched) when no witness was given.
    """
    witness = record.prediction.witness
    if witness is None:
        record.witness_valid = None
        record.witness_reason = None
        return None
    record.witness_valid, record.witness_reason = check_witness(witness, instance)
    return record.witness_valid


def write_records(records: Iterable[EvaluationRecord], path: Union[str, Path]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for r in records:
            fh.write(r.to_json() + "\n")


def iter_records(path: Union[str, Path]) -> Iterator[EvaluationRecord]:
    """Records from a JSON-lines file; a truncated final line (interrupted write) is skipped."""
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().split("\n")
    for i, line in enumerate(lines):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
        except json.JSONDecodeError:
            if i == len(lines) - 1:
                return
            raise ValueError(f"{path}: malformed record on line {i + 1}")
        yield EvaluationRecord.from_dict(data)


def load_records(path: Union[str, Path]) -> list[EvaluationRecord]:
    return list(iter_records(path))
