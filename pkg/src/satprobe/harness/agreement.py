from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ..metrics import adr, paired_outcomes
from .records import EvaluationRecord
from .scoring import pair_predictions


@dataclass(frozen=True)
class AgreementReport:
    """Decision agreement between two representations of the same instances.

    ``split`` gives, among disagreements, the share where A was right and the
    share where B was right; it is None when there are no disagreements.
    Disagreements in which neither side is right (an abstention against a
    wrong answer) are counted in ``neither_correct``.
    """

    instances: int
    agreements: int
    disagreements: int
    a_correct: int
    b_correct: int
    neither_correct: int
    adr_a: Optional[Fraction]
    adr_b: Optional[Fraction]

    @property
    def agreement(self) -> Fraction:
        return Fraction(self.agreements, self.instances)

    @property
    def split(self) -> Optional[tuple[Fraction, Fraction]]:
        if not self.disagreements:
            return None
        return Fraction(self.a_correct, self.disagreements), Fraction(self.b_correct, self.disagreements)

    def to_dict(self) -> dict:
        split = self.split
        return {
            "instances": self.instances,
            "agreements": self.agreements,
            "agreement": self.agreement,
            "disagreements": self.disagreements,
            "a_correct": self.a_correct,
            "b_correct": self.b_correct,
            "neither_correct": self.neither_correct,
            "split_a": split[0] if split else None,
            "split_b": split[1] if split else None,
            "adr_a": self.adr_a,
            "adr_b": self.adr_b,
        }


def _adr_of(records: Sequence[EvaluationRecord]) -> Optional[Fraction]:
    pairs, _ = pair_predictions(records)
    return adr(paired_outcomes(pairs)) if pairs else None


def cross_representation_agreement(
    records_a: Sequence[EvaluationRecord], records_b: Sequence[EvaluationRecord]
) -> AgreementReport:
    """Match records by instance id; YES/NO count as the same decision as SAT/UNSAT."""
    a = {r.instance_id: r for r in records_a}
    b = {r.instance_id: r for r in records_b}
    only_a, only_b = sorted(set(a) - set(b)), sorted(set(b) - set(a))
    if only_a or only_b:
        raise ValueError(f"record sets differ: missing from B {only_a}, missing from A {only_b}")
    if not a:
        raise ValueError("no records to compare")
    agree = a_ok = b_ok = neither = 0
    for iid, ra in a.items():
        rb = b[iid]
        if ra.true_label.canonical is not rb.true_label.canonical:
            raise ValueError(f"instance {iid} carries different true labels")
        if ra.prediction.decision.canonical is rb.prediction.decision.canonical:
            agree += 1
        elif ra.correct:
            a_ok += 1
        elif rb.correct:
            b_ok += 1
        else:
            neither += 1
    return AgreementReport(
        instances=len(a),
        agreements=agree,
        disagreements=len(a) - agree,
        a_correct=a_ok,
        b_correct=b_ok,
        neither_correct=neither,
        adr_a=_adr_of(records_a),
        adr_b=_adr_of(records_b),
    )
