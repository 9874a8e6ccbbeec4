"""Concurrent evaluation loop with retries, incremental persistence and resume."""

from __future__ import annotations

import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Mapping, Optional, Sequence, Union

from ..labels import Decision
from .backends import Backend, BackendConfig, BackendError, HttpBackend, Query, TransportError
from .parsing import Prediction, parse_response
from .prompts import DEFAULT_TEMPLATES, PromptTemplate, Representation
from .records import EvalItem, EvaluationRecord, iter_records, validate_witness

log = logging.getLogger(__name__)


class _RecordWriter:
    """Serializes appends to the JSON-lines file."""

    def __init__(self, path: Optional[Path]):
        self.path = path
        self._lock = threading.Lock()

    def append(self, record: EvaluationRecord) -> None:
        if self.path is None:
            return
        line = record.to_json() + "\n"
        with self._lock, open(self.path, "a", encoding="utf-8") as fh:
            fh.write(line)
            fh.flush()


def _query_once_with_retries(
    backend: Backend,
    query: Query,
    max_retries: int,
    backoff: float,
    sleep: Callable[[float], None],
) -> tuple[Optional[str], Optional[str], int]:
    """(text, error, attempts).  Only transport errors are retried."""
    attempts = 0
    while True:
        attempts += 1
        try:
            return backend.complete(query), None, attempts
        except TransportError as exc:
            if attempts > max_retries:
                return None, f"{type(exc).__name__}: {exc} (after {attempts} attempts)", attempts
            if backoff:
                sleep(backoff * 2 ** (attempts - 1))
        except BackendError as exc:
            return None, f"{type(exc).__name__}: {exc}", attempts
        except Exception as exc:  # a misbehaving client must not abort the batch
            return None, f"unexpected {type(exc).__name__}: {exc}", attempts


def evaluate_item(
    item: EvalItem,
    ordinal: int,
    backend: Backend,
    template: PromptTemplate,
    max_retries: int = 2,
    backoff: float = 0.0,
    sleep: Callable[[float], None] = time.sleep,
) -> EvaluationRecord:
    prompt = template.render(item.instance)
    query = Query(item.instance_id, ordinal, prompt, item)
    start = time.perf_counter()
    text, error, attempts = _query_once_with_retries(backend, query, max_retries, backoff, sleep)
    latency = time.perf_counter() - start
    if text is None:
        prediction = Prediction.abstain(error=error, latency=latency)
    else:
        prediction = parse_response(text, item.representation)
        prediction.latency = latency
    record = EvaluationRecord(
        instance_id=item.instance_id,
        representation=item.representation,
        true_label=item.label.canonical,
        prediction=prediction,
        pair_id=item.pair_id,
        model=getattr(backend, "name", ""),
        n=item.n,
        alpha=item.alpha,
        k=item.k,
        attempts=attempts,
    )
    validate_witness(record, item.instance)
    return record


def run_evaluation(
    items: Sequence[EvalItem],
    backend: Union[Backend, BackendConfig],
    templates: Optional[Mapping[Representation, PromptTemplate]] = None,
    *,
    concurrency: Optional[int] = None,
    max_retries: Optional[int] = None,
    retry_backoff: Optional[float] = None,
    records_path: Union[str, Path, None] = None,
    resume: bool = True,
    sleep: Callable[[float], None] = time.sleep,
) -> list[EvaluationRecord]:
    """Query ``backend`` for every item and return records sorted by instance id.

    With ``records_path`` each record is appended as soon as it completes;
    when ``resume`` is set, ids already present in that file are not asked again.
    """
    config = backend if isinstance(backend, BackendConfig) else None
    client: Backend = HttpBackend(config) if config else backend
    concurrency = concurrency or (config.concurrency if config else 4)
    max_retries = max_retries if max_retries is not None else (config.max_retries if config else 2)
    backoff = retry_backoff if retry_backoff is not None else (config.retry_backoff if config else 0.0)
    if concurrency < 1 or max_retries < 0:
        raise ValueError("concurrency must be >= 1 and max_retries >= 0")
    templates = dict(DEFAULT_TEMPLATES, **(templates or {}))

    ids = [it.instance_id for it in items]
    if len(set(ids)) != len(ids):
        raise ValueError("instance ids must be unique")

    path = Path(records_path) if records_path is not None else None
    done: dict[str, EvaluationRecord] = {}
    if path is not None and path.exists():
        if resume:
            wanted = set(ids)
            done = {r.instance_id: r for r in iter_records(path) if r.instance_id in wanted}
            log.info("resuming: %d of %d records already present", len(done), len(ids))
        else:
            path.unlink()
    writer = _RecordWriter(path)

    todo = [(i, it) for i, it in enumerate(items) if it.instance_id not in done]

    def work(job: tuple[int, EvalItem]) -> EvaluationRecord:
        ordinal, item = job
        record = evaluate_item(item, ordinal, client, templates[item.representation], max_retries, backoff, sleep)
        writer.append(record)
        return record

    try:
        with ThreadPoolExecutor(max_workers=concurrency) as pool:
            for record in pool.map(work, todo):
                done[record.instance_id] = record
    finally:
        if config is not None:
            client.close()
    return sorted(done.values(), key=lambda r: r.instance_id)


def completion_rate(records: Sequence[EvaluationRecord]) -> float:
    """Share of records with a non-ABSTAIN decision."""
    if not records:
        raise ValueError("no records")
    answered = sum(r.prediction.decision is not Decision.ABSTAIN for r in records)
    return answered / len(records)
