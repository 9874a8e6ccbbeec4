"""Classification metrics and paired-evaluation mathematics."""

from .classification import (
    EMPTY_TALLY,
    NO_ACTUAL_NEGATIVE,
    NO_ACTUAL_POSITIVE,
    NO_PREDICTED_NEGATIVE,
    NO_PREDICTED_POSITIVE,
    ConfusionCounts,
    MetricValue,
    accuracy,
    classification_report,
    confusion,
    f1,
    mcc,
    precision,
    recall,
)
from .paired import (
    PairedOutcomeCounts,
    adr,
    adr_bounds,
    adr_decomposition,
    mcc_from_pairs,
    mcc_from_recalls,
    paired_accuracy,
    paired_outcomes,
    paired_report,
)

__all__ = [
    "EMPTY_TALLY",
    "NO_ACTUAL_NEGATIVE",
    "NO_ACTUAL_POSITIVE",
    "NO_PREDICTED_NEGATIVE",
    "NO_PREDICTED_POSITIVE",
    "ConfusionCounts",
    "MetricValue",
    "PairedOutcomeCounts",
    "accuracy",
    "adr",
    "adr_bounds",
    "adr_decomposition",
    "classification_report",
    "confusion",
    "f1",
    "mcc",
    "mcc_from_pairs",
    "mcc_from_recalls",
    "paired_accuracy",
    "paired_outcomes",
    "paired_report",
    "precision",
    "recall",
]
