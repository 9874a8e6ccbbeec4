import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from satprobe.labels import Decision, as_decision
from satprobe.metrics import (
    NO_ACTUAL_POSITIVE,
    NO_PREDICTED_NEGATIVE,
    NO_PREDICTED_POSITIVE,
    ConfusionCounts,
    MetricValue,
    PairedOutcomeCounts,
    accuracy,
    adr,
    adr_bounds,
    adr_decomposition,
    classification_report,
    confusion,
    f1,
    mcc,
    mcc_from_pairs,
    mcc_from_recalls,
    paired_accuracy,
    paired_outcomes,
    paired_report,
    precision,
    recall,
)

S, U, A = Decision.SAT, Decision.UNSAT, Decision.ABSTAIN


def test_confusion_orientation():
    records = [(S, S)] * 3 + [(U, S)]
    c = confusion(records, S)
    assert (c.tp, c.fp, c.tn, c.fn) == (3, 1, 0, 0)
    c = confusion(records, U)
    assert (c.tp, c.fp, c.tn, c.fn) == (0, 0, 3, 1)
    assert confusion(records, S).flipped() == c


def test_confusion_abstain_and_errors():
    c = confusion([(S, S), (U, A), (S, "abstain"), (U, "UNSATISFIABLE")])
    assert c.abstained == 2 and c.total == 2 and c.completion_rate == 0.5
    with pytest.raises(ValueError):
        confusion([])
    with pytest.raises(ValueError):
        confusion([(A, S)])
    with pytest.raises(ValueError):
        confusion([(S, S)], positive=A)


def test_labels():
    assert as_decision("yes") is Decision.YES and Decision.YES.canonical is S
    assert as_decision(True) is S and as_decision("TIMEOUT") is A
    with pytest.raises(ValueError):
        as_decision("maybe")


def test_basic_metric_examples():
    assert precision(ConfusionCounts(3, 1, 0, 0)).value == 0.75
    r = recall(ConfusionCounts(0, 2, 2, 0))
    assert not r.defined and r.reason == NO_ACTUAL_POSITIVE
    assert accuracy(ConfusionCounts(5, 0, 5, 0)).value == 1.0
    assert f1(ConfusionCounts(2, 1, 0, 1)).value == pytest.approx(2 / 3)
    assert f1(ConfusionCounts(0, 0, 3, 2)).reason == NO_PREDICTED_POSITIVE


def test_mcc_examples():
    assert mcc(ConfusionCounts(5, 0, 5, 0)).value == 1.0
    degenerate = mcc(ConfusionCounts(5, 5, 0, 0))
    assert not degenerate.defined and degenerate.reason == NO_PREDICTED_NEGATIVE
    assert mcc(ConfusionCounts(4, 1, 4, 1)).value == pytest.approx(0.6, abs=1e-15)
    assert mcc(ConfusionCounts(3, 0, 0, 0)).reason == "no_actual_negative+no_predicted_negative"


def test_metric_value_contract():
    with pytest.raises(ValueError):
        MetricValue(None)
    with pytest.raises(ValueError):
        MetricValue(1.0, "x")
    with pytest.raises(ValueError):
        float(MetricValue.undefined("why"))
    assert str(MetricValue.undefined("why")) == "UNDEFINED(why)"
    assert float(MetricValue(0.5)) == 0.5


@given(st.integers(0, 20), st.integers(0, 20), st.integers(0, 20), st.integers(0, 20))
def test_undefined_never_becomes_a_number(tp, fp, tn, fn):
    c = ConfusionCounts(tp, fp, tn, fn)
    for name, m in classification_report(c).items():
        if m.defined:
            assert math.isfinite(m.value)
            assert -1 <= m.value <= 1
        else:
            assert m.reason
    if 0 in (tp + fp, tp + fn, tn + fp, tn + fn) and c.total:
        assert not mcc(c).defined


def test_paired_examples():
    c = paired_outcomes([(S, U)] * 5)
    assert (c.n11, c.m, c.r_sat, c.r_unsat) == (5, 5, 1, 1)
    c = paired_outcomes([(S, S)] * 5)
    assert c.n10 == 5 and (c.r_sat, c.r_unsat) == (1, 0)
    c = PairedOutcomeCounts(3, 1, 1, 0)
    assert (c.r_sat, c.r_unsat) == (Fraction(4, 5), Fraction(4, 5))
    assert adr(c) == Fraction(3, 5)


def test_paired_abstain_counts_wrong():
    c = paired_outcomes([(A, U), (S, "abstain"), (Decision.YES, Decision.NO)])
    assert (c.n11, c.n10, c.n01, c.n00) == (1, 1, 1, 0)
    assert (c.abstain_sat, c.abstain_unsat) == (1, 1)
    assert c.completion_rate == Fraction(2, 3)
    with pytest.raises(ValueError):
        paired_outcomes([])


def test_worked_examples():
    c = PairedOutcomeCounts(0, 5, 0, 0)
    assert (c.r_sat, c.r_unsat) == (1, 0)
    assert paired_accuracy(c) == Fraction(1, 2) and adr(c) == 0
    c = PairedOutcomeCounts(3, 2, 0, 0)
    assert (c.r_sat, c.r_unsat) == (1, Fraction(3, 5))
    assert adr(c) == Fraction(3, 5) and paired_accuracy(c) == Fraction(4, 5)


def test_bounds_examples():
    assert adr_bounds(1.0, 0.6) == (pytest.approx(0.6), 0.6)
    assert adr_bounds(Fraction(1), Fraction(3, 5)) == (Fraction(3, 5), Fraction(3, 5))
    assert adr_bounds(0.5, 0.5) == (0.0, 0.5)
    assert adr_bounds(1.0, 1.0) == (1.0, 1.0)
    with pytest.raises(ValueError):
        adr_bounds(1.2, 0.5)
    with pytest.raises(ValueError):
        adr_bounds(0.5, -0.1)


def test_decomposition_examples():
    assert adr_decomposition(PairedOutcomeCounts(5, 0, 0, 0)) == (1, 0)
    assert adr_decomposition(PairedOutcomeCounts(0, 5, 0, 0)) == (0, 0)
    assert adr_decomposition(PairedOutcomeCounts(3, 1, 1, 0)) == (Fraction(16, 25), Fraction(-1, 25))


def test_mcc_from_pairs_examples():
    assert mcc_from_pairs(PairedOutcomeCounts(3, 1, 1, 0)).value == pytest.approx(0.6, abs=1e-15)
    assert mcc(PairedOutcomeCounts(3, 1, 1, 0).flattened()).value == pytest.approx(0.6, abs=1e-15)
    assert mcc_from_pairs(PairedOutcomeCounts(4, 0, 0, 0)).value == 1.0
    r = mcc_from_pairs(PairedOutcomeCounts(0, 4, 0, 0))
    assert not r.defined and r.reason == NO_PREDICTED_NEGATIVE
    assert mcc_from_pairs(PairedOutcomeCounts(0, 0, 4, 0)).reason == NO_PREDICTED_POSITIVE
    assert mcc_from_recalls(1, 0).reason == NO_PREDICTED_NEGATIVE
    assert mcc_from_recalls(0, 1).reason == NO_PREDICTED_POSITIVE


def test_counts_validation():
    with pytest.raises(ValueError):
        PairedOutcomeCounts(-1, 0, 0, 0)
    with pytest.raises(ValueError):
        adr(PairedOutcomeCounts(0, 0, 0, 0))
    with pytest.raises(ValueError):
        ConfusionCounts(0, -1, 0, 0)


@given(st.integers(0, 50), st.integers(0, 50), st.integers(0, 50), st.integers(0, 50))
def test_paired_identities(n11, n10, n01, n00):
    if n11 + n10 + n01 + n00 == 0:
        return
    c = PairedOutcomeCounts(n11, n10, n01, n00)
    lower, upper = adr_bounds(c.r_sat, c.r_unsat)
    acc = paired_accuracy(c)
    assert lower <= adr(c) <= upper <= acc
    assert acc == (c.r_sat + c.r_unsat) / 2
    assert sum(adr_decomposition(c)) == adr(c)
    a, b = mcc_from_pairs(c), mcc(c.flattened())
    assert a.defined == b.defined
    if a.defined:
        assert a.value == pytest.approx(b.value, abs=1e-12)


def test_report_keys():
    rep = paired_report(PairedOutcomeCounts(3, 1, 1, 0))
    assert rep["adr"] == Fraction(3, 5) and rep["covariance_term"] == Fraction(-1, 25)
    assert isinstance(rep["mcc"], MetricValue)


def test_closed_form_matches_on_balanced_random_sets():
    rng = random.Random(4)
    for _ in range(200):
        c = PairedOutcomeCounts(*(rng.randint(0, 9) for _ in range(4)))
        if c.m == 0:
            continue
        a, b = mcc_from_recalls(c.r_sat, c.r_unsat), mcc(c.flattened())
        assert a.defined == b.defined
        if a.defined:
            assert a.value == pytest.approx(b.value, abs=1e-12)
