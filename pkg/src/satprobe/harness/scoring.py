"""Metric rows over evaluation records, and CSV rendering with blank undefined cells."""

from __future__ import annotations

import csv
import io
from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from ..labels import Decision
from ..metrics import (
    MetricValue,
    adr,
    adr_bounds,
    adr_decomposition,
    classification_report,
    confusion,
    mcc_from_pairs,
    paired_accuracy,
    paired_outcomes,
)
from .records import EvaluationRecord


def pair_predictions(records: Iterable[EvaluationRecord]) -> tuple[list[tuple[Decision, Decision]], list[str]]:
    """``(on SAT member, on UNSAT member)`` per complete pair, plus ids of incomplete pairs."""
    groups: dict[str, dict[Decision, Decision]] = defaultdict(dict)
    for r in records:
        if r.pair_id is not None:
            groups[r.pair_id][r.true_label.canonical] = r.prediction.decision
    complete, incomplete = [], []
    for pid in sorted(groups):
        g = groups[pid]
        if Decision.SAT in g and Decision.UNSAT in g:
            complete.append((g[Decision.SAT], g[Decision.UNSAT]))
        else:
            incomplete.append(pid)
    return complete, incomplete


def alpha_bin(alpha: Optional[float], width: Optional[float] = None) -> str:
    if alpha is None:
        return ""
    if width:
        alpha = (alpha // width) * width
    return f"{alpha:.2f}"


SCORE_COLUMNS = (
    "model",
    "n",
    "alpha_bin",
    "representation",
    "instances",
    "completion_rate",
    "accuracy",
    "precision_sat",
    "recall_sat",
    "f1_sat",
    "precision_unsat",
    "recall_unsat",
    "f1_unsat",
    "mcc",
    "pairs",
    "r_sat",
    "r_unsat",
    "paired_accuracy",
    "adr",
    "adr_lower",
    "adr_upper",
    "adr_covariance",
    "mcc_pairs",
    "witnesses",
    "witness_valid_rate",
    "undefined",
)


def score_group(records: Sequence[EvaluationRecord]) -> dict[str, object]:
    """Every metric for one group of records; pair metrics need both members of a pair present."""
    row: dict[str, object] = {"instances": len(records)}
    answered = [r for r in records if r.prediction.decision is not Decision.ABSTAIN]
    row["completion_rate"] = Fraction(len(answered), len(records))
    tally = confusion(((r.true_label, r.prediction.decision) for r in records), Decision.SAT)
    sat_side = classification_report(tally)
    unsat_side = classification_report(tally.flipped())
    row.update(
        accuracy=sat_side["accuracy"],
        precision_sat=sat_side["precision"],
        recall_sat=sat_side["recall"],
        f1_sat=sat_side["f1"],
        precision_unsat=unsat_side["precision"],
        recall_unsat=unsat_side["recall"],
        f1_unsat=unsat_side["f1"],
        mcc=sat_side["mcc"],
    )
    pairs, _ = pair_predictions(records)
    row["pairs"] = len(pairs)
    if pairs:
        counts = paired_outcomes(pairs)
        lower, upper = adr_bounds(counts.r_sat, counts.r_unsat)
        row.update(
            r_sat=counts.r_sat,
            r_unsat=counts.r_unsat,
            paired_accuracy=paired_accuracy(counts),
            adr=adr(counts),
            adr_lower=lower,
            adr_upper=upper,
            adr_covariance=adr_decomposition(counts)[1],
            mcc_pairs=mcc_from_pairs(counts),
        )
    witnessed = [r for r in records if r.witness_valid is not None]
    row["witnesses"] = len(witnessed)
    if witnessed:
        row["witness_valid_rate"] = Fraction(sum(r.witness_valid for r in witnessed), len(witnessed))
    return row


def score_records(
    records: Iterable[EvaluationRecord],
    alpha_width: Optional[float] = None,
    pooled_alpha: bool = False,
) -> list[dict[str, object]]:
    """One row per (model, N, alpha bin, representation), sorted by those keys.

    ``pooled_alpha`` merges all densities into one row per (model, N, representation).
    """
    groups: dict[tuple, list[EvaluationRecord]] = defaultdict(list)
    for r in records:
        a = "all" if pooled_alpha else alpha_bin(r.alpha, alpha_width)
        groups[(r.model, r.n if r.n is not None else "", a, r.representation.value)].append(r)
    rows = []
    for key in sorted(groups, key=lambda k: tuple(str(x).zfill(8) if isinstance(x, int) else str(x) for x in k)):
        model, n, a, rep = key
        row = {"model": model, "n": n, "alpha_bin": a, "representation": rep}
        row.update(score_group(groups[key]))
        rows.append(row)
    return rows


def format_cell(value: object) -> tuple[str, Optional[str]]:
    """(cell text, undefined reason).  Undefined metrics become an empty cell."""
    if value is None:
        return "", None
    if isinstance(value, MetricValue):
        if not value.defined:
            return "", value.reason
        value = value.value
    if isinstance(value, bool):
        return str(int(value)), None
    if isinstance(value, (Fraction, float)):
        return repr(round(float(value), 10)), None
    return str(value), None


def rows_to_csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    """CSV text; if ``columns`` contains "undefined" it collects ``metric:reason`` notes for blank cells."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        cells, notes = [], []
        for col in columns:
            if col == "undefined":
                cells.append(None)
                continue
            text, reason = format_cell(row.get(col))
            if reason:
                notes.append(f"{col}:{reason}")
            cells.append(text)
        cells = [";".join(notes) if c is None else c for c in cells]
        writer.writerow(cells)
    return out.getvalue()
