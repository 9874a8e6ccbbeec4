"""Evaluation pipeline: prompts, backends, response parsing, records and scoring."""

from .agreement import AgreementReport, cross_representation_agreement
from .backends import (
    Backend,
    BackendConfig,
    BackendError,
    BackendTimeout,
    ConstantClient,
    HttpBackend,
    OracleClient,
    Query,
    TimeoutClient,
    TransportError,
    scripted_backend,
)
from .parsing import Prediction, parse_response
from .prompts import DEFAULT_TEMPLATES, PromptTemplate, Representation, build_prompt, render_instance
from .records import (
    EvalItem,
    EvaluationRecord,
    check_witness,
    items_from_instances,
    items_from_pairs,
    load_records,
    reduce_formula,
    validate_witness,
    write_records,
)
from .runner import completion_rate, evaluate_item, run_evaluation
from .scoring import SCORE_COLUMNS, pair_predictions, rows_to_csv, score_records

__all__ = [
    "AgreementReport",
    "Backend",
    "BackendConfig",
    "BackendError",
    "BackendTimeout",
    "ConstantClient",
    "DEFAULT_TEMPLATES",
    "EvalItem",
    "EvaluationRecord",
    "HttpBackend",
    "OracleClient",
    "Prediction",
    "PromptTemplate",
    "Query",
    "Representation",
    "SCORE_COLUMNS",
    "TimeoutClient",
    "TransportError",
    "build_prompt",
    "check_witness",
    "completion_rate",
    "cross_representation_agreement",
    "evaluate_item",
    "items_from_instances",
    "items_from_pairs",
    "load_records",
    "pair_predictions",
    "parse_response",
    "reduce_formula",
    "render_instance",
    "rows_to_csv",
    "run_evaluation",
    "score_records",
    "scripted_backend",
    "validate_witness",
    "write_records",
]
