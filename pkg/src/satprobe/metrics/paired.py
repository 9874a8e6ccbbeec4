"""Paired-outcome tallies and the accurate differentiation rate (ADR).

Ratios of counts are returned as exact ``Fraction`` values so the bound
chain, the accuracy identity and the covariance decomposition hold without
rounding; only the MCC routes (which need a square root) return floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from ..labels import Decision, as_decision
from .classification import (
    NO_PREDICTED_NEGATIVE,
    NO_PREDICTED_POSITIVE,
    ConfusionCounts,
    MetricValue,
)

Rate = Union[Fraction, float]


@dataclass(frozen=True)
class PairedOutcomeCounts:
    """Pair tallies: 11 both right, 10 only the SAT member right, 01 only the UNSAT member right, 00 both wrong."""

    n11: int
    n10: int
    n01: int
    n00: int
    abstain_sat: int = 0
    abstain_unsat: int = 0

    def __post_init__(self) -> None:
        if min(self.n11, self.n10, self.n01, self.n00, self.abstain_sat, self.abstain_unsat) < 0:
            raise ValueError("counts must be nonnegative")

    @property
    def m(self) -> int:
        return self.n11 + self.n10 + self.n01 + self.n00

    @property
    def r_sat(self) -> Fraction:
        return Fraction(self.n11 + self.n10, self._m_checked())

    @property
    def r_unsat(self) -> Fraction:
        return Fraction(self.n11 + self.n01, self._m_checked())

    @property
    def completion_rate(self) -> Fraction:
        return 1 - Fraction(self.abstain_sat + self.abstain_unsat, 2 * self._m_checked())

    def _m_checked(self) -> int:
        if self.m < 1:
            raise ValueError("paired metrics need at least one pair")
        return self.m

    def flattened(self) -> ConfusionCounts:
        """Confusion tally over the 2M pair members with SAT as the positive class.

        Wrong answers count as the opposite class here, so abstentions must be
        handled by the caller if they matter.
        """
        return ConfusionCounts(
            tp=self.n11 + self.n10,
            fp=self.n10 + self.n00,
            tn=self.n11 + self.n01,
            fn=self.n01 + self.n00,
            positive=Decision.SAT,
        )


def paired_outcomes(pairs: Iterable[tuple[object, object]]) -> PairedOutcomeCounts:
    """Tally ``(prediction on the SAT member, prediction on the UNSAT member)`` pairs.

    ABSTAIN counts as a wrong answer for its member and is also tracked on its own.
    """
    n11 = n10 = n01 = n00 = ab_s = ab_u = 0
    for on_sat, on_unsat in pairs:
        ps = as_decision(on_sat).canonical
        pu = as_decision(on_unsat).canonical
        ab_s += ps is Decision.ABSTAIN
        ab_u += pu is Decision.ABSTAIN
        a = ps is Decision.SAT
        b = pu is Decision.UNSAT
        if a and b:
            n11 += 1
        elif a:
            n10 += 1
        elif b:
            n01 += 1
        else:
            n00 += 1
    counts = PairedOutcomeCounts(n11, n10, n01, n00, ab_s, ab_u)
    if counts.m == 0:
        raise ValueError("no pairs to tally")
    return counts


def adr(counts: PairedOutcomeCounts) -> Fraction:
    """Fraction of pairs with both members classified correctly."""
    return Fraction(counts.n11, counts._m_checked())


def paired_accuracy(counts: PairedOutcomeCounts) -> Fraction:
    """Accuracy over the 2M pair members (abstentions counted wrong)."""
    return Fraction(2 * counts.n11 + counts.n10 + counts.n01, 2 * counts._m_checked())


def _check_rate(x: Rate, name: str) -> None:
    if not 0 <= x <= 1:
        raise ValueError(f"{name} must lie in [0, 1], got {x}")


def adr_bounds(r_sat: Rate, r_unsat: Rate) -> tuple[Rate, Rate]:
    """(max(0, r_S + r_U - 1), min(r_S, r_U)); ADR always lies in this interval."""
    _check_rate(r_sat, "r_sat")
    _check_rate(r_unsat, "r_unsat")
    return max(0 * r_sat, r_sat + r_unsat - 1), min(r_sat, r_unsat)


def adr_decomposition(counts: PairedOutcomeCounts) -> tuple[Fraction, Fraction]:
    """(r_S * r_U, covariance of the two correctness indicators); they sum to ADR."""
    independent = counts.r_sat * counts.r_unsat
    return independent, adr(counts) - independent


def mcc_from_pairs(counts: PairedOutcomeCounts) -> MetricValue:
    """MCC of the flattened members written in pair terms: (ADR - n00/M) / sqrt(1 - delta^2).

    ``delta = (n10 - n01) / M``; undefined when |delta| = 1 (all pairs lean to one class).
    """
    m = counts._m_checked()
    beta = Fraction(counts.n00, m)
    delta = Fraction(counts.n10 - counts.n01, m)
    if delta == 1:
        return MetricValue.undefined(NO_PREDICTED_NEGATIVE)
    if delta == -1:
        return MetricValue.undefined(NO_PREDICTED_POSITIVE)
    value = float(adr(counts) - beta) / math.sqrt(float(1 - delta * delta))
    return MetricValue(max(-1.0, min(1.0, value)))


def mcc_from_recalls(r_sat: Rate, r_unsat: Rate) -> MetricValue:
    """Closed form (r_S + r_U - 1) / sqrt((r_S + 1 - r_U)(r_U + 1 - r_S)) for balanced pair sets."""
    _check_rate(r_sat, "r_sat")
    _check_rate(r_unsat, "r_unsat")
    a = r_sat + 1 - r_unsat
    b = r_unsat + 1 - r_sat
    if b == 0:
        return MetricValue.undefined(NO_PREDICTED_NEGATIVE)
    if a == 0:
        return MetricValue.undefined(NO_PREDICTED_POSITIVE)
    value = float(r_sat + r_unsat - 1) / math.sqrt(float(a * b))
    return MetricValue(max(-1.0, min(1.0, value)))


def paired_report(counts: PairedOutcomeCounts) -> dict[str, object]:
    lower, upper = adr_bounds(counts.r_sat, counts.r_unsat)
    independent, covariance = adr_decomposition(counts)
    return {
        "m": counts.m,
        "n11": counts.n11,
        "n10": counts.n10,
        "n01": counts.n01,
        "n00": counts.n00,
        "r_sat": counts.r_sat,
        "r_unsat": counts.r_unsat,
        "accuracy": paired_accuracy(counts),
        "adr": adr(counts),
        "adr_lower": lower,
        "adr_upper": upper,
        "independence_term": independent,
        "covariance_term": covariance,
        "mcc": mcc_from_pairs(counts),
    }
