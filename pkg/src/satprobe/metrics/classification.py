"""Confusion tallies and textbook metrics with explicit undefined values.

A zero denominator never turns into 0.0: the metric comes back as an
undefined ``MetricValue`` carrying a reason code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from ..labels import Decision, as_decision

# reason codes, one per zero factor of the MCC denominator, plus an empty tally
NO_PREDICTED_POSITIVE = "no_predicted_positive"  # TP + FP = 0
NO_ACTUAL_POSITIVE = "no_actual_positive"  # TP + FN = 0
NO_ACTUAL_NEGATIVE = "no_actual_negative"  # TN + FP = 0
NO_PREDICTED_NEGATIVE = "no_predicted_negative"  # TN + FN = 0
EMPTY_TALLY = "empty_tally"


@dataclass(frozen=True)
class MetricValue:
    value: Optional[float]
    reason: Optional[str] = None

    def __post_init__(self) -> None:
        if (self.value is None) == (self.reason is None):
            raise ValueError("exactly one of value / reason must be set")

    @classmethod
    def undefined(cls, reason: str) -> "MetricValue":
        return cls(None, reason)

    @property
    def defined(self) -> bool:
        return self.value is not None

    def __float__(self) -> float:
        if self.value is None:
            raise ValueError(f"metric is undefined ({self.reason})")
        return self.value

    def __str__(self) -> str:
        return f"{self.value:.6g}" if self.value is not None else f"UNDEFINED({self.reason})"


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    tn: int
    fn: int
    positive: Decision = Decision.SAT
    abstained: int = 0

    def __post_init__(self) -> None:
        if min(self.tp, self.fp, self.tn, self.fn, self.abstained) < 0:
            raise ValueError("counts must be nonnegative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    @property
    def completion_rate(self) -> float:
        attempted = self.total + self.abstained
        return self.total / attempted if attempted else 0.0

    def flipped(self) -> "ConfusionCounts":
        """Same tally with the other class as positive."""
        other = Decision.UNSAT if self.positive is Decision.SAT else Decision.SAT
        return ConfusionCounts(self.tn, self.fn, self.tp, self.fp, other, self.abstained)


Label = Union[str, Decision, bool]


def confusion(records: Iterable[tuple[Label, Label]], positive: Label = Decision.SAT) -> ConfusionCounts:
    """Tally ``(true, predicted)`` pairs relative to ``positive``; ABSTAIN predictions are set aside."""
    pos = as_decision(positive).canonical
    if pos not in (Decision.SAT, Decision.UNSAT):
        raise ValueError(f"positive class must be SAT or UNSAT, got {positive!r}")
    tp = fp = tn = fn = abstained = 0
    seen = False
    for truth, pred in records:
        seen = True
        t = as_decision(truth).canonical
        p = as_decision(pred).canonical
        if t not in (Decision.SAT, Decision.UNSAT):
            raise ValueError(f"true label must be SAT or UNSAT, got {truth!r}")
        if p is Decision.ABSTAIN:
            abstained += 1
            continue
        if p is pos:
            if t is pos:
                tp += 1
            else:
                fp += 1
        elif t is pos:
            fn += 1
        else:
            tn += 1
    if not seen:
        raise ValueError("no records to tally")
    return ConfusionCounts(tp, fp, tn, fn, pos, abstained)


def precision(c: ConfusionCounts) -> MetricValue:
    if c.tp + c.fp == 0:
        return MetricValue.undefined(NO_PREDICTED_POSITIVE)
    return MetricValue(c.tp / (c.tp + c.fp))


def recall(c: ConfusionCounts) -> MetricValue:
    if c.tp + c.fn == 0:
        return MetricValue.undefined(NO_ACTUAL_POSITIVE)
    return MetricValue(c.tp / (c.tp + c.fn))


def f1(c: ConfusionCounts) -> MetricValue:
    """Harmonic mean of precision and recall; undefined whenever either one is."""
    p, r = precision(c), recall(c)
    if not p.defined:
        return p
    if not r.defined:
        return r
    return MetricValue(2 * c.tp / (2 * c.tp + c.fp + c.fn))


def accuracy(c: ConfusionCounts) -> MetricValue:
    if c.total == 0:
        return MetricValue.undefined(EMPTY_TALLY)
    return MetricValue((c.tp + c.tn) / c.total)


def mcc(c: ConfusionCounts) -> MetricValue:
    """Matthews correlation; undefined (listing every zero factor) when the denominator vanishes."""
    if c.total == 0:
        return MetricValue.undefined(EMPTY_TALLY)
    factors = (
        (c.tp + c.fp, NO_PREDICTED_POSITIVE),
        (c.tp + c.fn, NO_ACTUAL_POSITIVE),
        (c.tn + c.fp, NO_ACTUAL_NEGATIVE),
        (c.tn + c.fn, NO_PREDICTED_NEGATIVE),
    )
    zero = [reason for f, reason in factors if f == 0]
    if zero:
        return MetricValue.undefined("+".join(zero))
    denom = math.sqrt(math.prod(f for f, _ in factors))
    value = (c.tp * c.tn - c.fp * c.fn) / denom
    return MetricValue(max(-1.0, min(1.0, value)))


def classification_report(c: ConfusionCounts) -> dict[str, MetricValue]:
    return {
        "precision": precision(c),
        "recall": recall(c),
        "f1": f1(c),
        "accuracy": accuracy(c),
        "mcc": mcc(c),
    }
