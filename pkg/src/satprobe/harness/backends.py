"""Prediction backends: an HTTP client for live models and scripted clients for tests.

A backend is any object with a ``name`` attribute and a ``complete(query)``
method returning the raw response text.  Transport problems are signalled
with ``TransportError`` (retried by the runner); anything else that should
not be retried raises ``BackendError``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Optional, Protocol

import httpx

from ..labels import Decision
from ..reductions import cover_from_assignment, packing_from_assignment
from ..solver import solve
from .parsing import witness_to_json
from .prompts import Representation
from .records import EvalItem


class BackendError(RuntimeError):
    """Non-retryable failure (bad credentials, malformed response, ...)."""


class TransportError(BackendError):
    """Retryable failure: connection trouble, 5xx, rate limiting."""


class BackendTimeout(TransportError):
    pass


@dataclass(frozen=True)
class Query:
    instance_id: str
    ordinal: int  # position of the item in the evaluation input
    prompt: str
    item: Optional[EvalItem] = None


class Backend(Protocol):
    name: str

    def complete(self, query: Query) -> str: ...


@dataclass(frozen=True)
class BackendConfig:
    endpoint: str
    model: str
    timeout: float = 120.0
    max_retries: int = 2
    concurrency: int = 4
    credential_env: Optional[str] = None
    parameters: Mapping[str, Any] = field(default_factory=dict)
    response_field: str = "text"  # dotted path into the response JSON, e.g. "choices.0.text"
    retry_backoff: float = 1.0

    def __post_init__(self) -> None:
        if not self.endpoint:
            raise ValueError("endpoint is required")
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")
        if self.max_retries < 0:
            raise ValueError("max_retries must be nonnegative")
        if self.concurrency < 1:
            raise ValueError("concurrency must be at least 1")
        if self.retry_backoff < 0:
            raise ValueError("retry_backoff must be nonnegative")

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "BackendConfig":
        known = {f for f in cls.__dataclass_fields__}
        extra = set(d) - known
        if extra:
            raise ValueError(f"unknown backend config keys: {sorted(extra)}")
        return cls(**dict(d))

    def to_dict(self) -> dict:
        # the credential itself is never part of the config, only the variable name
        return {
            "endpoint": self.endpoint,
            "model": self.model,
            "timeout": self.timeout,
            "max_retries": self.max_retries,
            "concurrency": self.concurrency,
            "credential_env": self.credential_env,
            "parameters": dict(self.parameters),
            "response_field": self.response_field,
            "retry_backoff": self.retry_backoff,
        }


def _dig(data: Any, path: str) -> Any:
    for part in path.split("."):
        if isinstance(data, list) and part.isdigit():
            data = data[int(part)]
        elif isinstance(data, dict):
            data = data[part]
        else:
            raise KeyError(part)
    return data


class HttpBackend:
    """POSTs ``{model, prompt, parameters}`` as JSON and reads the text field of the reply."""

    def __init__(self, config: BackendConfig, transport: Optional[httpx.BaseTransport] = None):
        self.config = config
        self.name = config.model
        self._client = httpx.Client(timeout=config.timeout, transport=transport)

    def _headers(self) -> dict[str, str]:
        headers = {"Content-Type": "application/json"}
        env = self.config.credential_env
        if env:
            token = os.environ.get(env)
            if not token:
                raise BackendError(f"credential variable {env} is not set")
            headers["Authorization"] = f"Bearer {token}"
        return headers

    def complete(self, query: Query) -> str:
        body = {"model": self.config.model, "prompt": query.prompt, "parameters": dict(self.config.parameters)}
        try:
            resp = self._client.post(self.config.endpoint, json=body, headers=self._headers())
        except httpx.TimeoutException as exc:
            raise BackendTimeout(f"timed out after {self.config.timeout}s") from exc
        except httpx.TransportError as exc:
            raise TransportError(f"transport failure: {exc}") from exc
        if resp.status_code in (401, 403):
            raise BackendError(f"authentication failed (HTTP {resp.status_code})")
        if resp.status_code == 429 or resp.status_code >= 500:
            raise TransportError(f"HTTP {resp.status_code}")
        if resp.status_code >= 400:
            raise BackendError(f"HTTP {resp.status_code}: {resp.text[:200]}")
        try:
            text = _dig(resp.json(), self.config.response_field)
        except (ValueError, KeyError, IndexError) as exc:
            raise BackendError(f"response lacks field {self.config.response_field!r}") from exc
        if not isinstance(text, str):
            raise BackendError(f"field {self.config.response_field!r} is not text")
        return text

    def close(self) -> None:
        self._client.close()


def _answer(rep: Representation, affirmative: bool) -> str:
    if rep is Representation.CNF:
        return "SATISFIABLE" if affirmative else "UNSATISFIABLE"
    return "YES" if affirmative else "NO"


class OracleClient:
    """Answers every query correctly from the solver, with a valid witness."""

    name = "scripted:oracle"

    def complete(self, query: Query) -> str:
        item = query.item
        if item is None:
            raise BackendError("scripted clients need the item attached to the query")
        result = solve(item.formula)
        payload: dict[str, Any] = {
            "decision": _answer(item.representation, result.is_sat),
            "branches": result.decisions,
            "conflicts": result.conflicts,
        }
        if result.is_sat:
            model = result.model
            if item.representation is Representation.CNF:
                payload["assignment"] = {f"x{v}": val for v, val in sorted(model.items())}
            elif item.representation is Representation.VERTEX_COVER:
                payload["cover"] = sorted(cover_from_assignment(item.formula, model))
            else:
                payload.update(witness_to_json(packing_from_assignment(item.formula, model)))
        return json.dumps(payload)


class ConstantClient:
    """Always gives the same decision, never a witness."""

    def __init__(self, decision: Decision):
        self.decision = decision.canonical
        self.name = f"scripted:always-{self.decision.value.lower()}"

    def complete(self, query: Query) -> str:
        rep = query.item.representation if query.item is not None else Representation.CNF
        return json.dumps({"decision": _answer(rep, self.decision is Decision.SAT)})


class TimeoutClient:
    """Wraps another client and times out on a fixed share of query ordinals.

    Ordinal i fails iff floor((i + 1) * rate) > floor(i * rate), which spreads
    the failures evenly and makes every block of 1/rate ordinals lose exactly
    one query when 1/rate is whole.  Failures repeat on retry.
    """

    def __init__(self, rate: float, inner: Optional[Backend] = None):
        if not 0 <= rate <= 1:
            raise ValueError("timeout rate must lie in [0, 1]")
        self.rate = Fraction(rate).limit_denominator(1000)
        self.inner = inner or OracleClient()
        self.name = f"scripted:timeout-{round(float(self.rate) * 100)}"

    def fails(self, ordinal: int) -> bool:
        return (ordinal + 1) * self.rate // 1 > ordinal * self.rate // 1

    def complete(self, query: Query) -> str:
        if self.fails(query.ordinal):
            raise BackendTimeout(f"scripted timeout for ordinal {query.ordinal}")
        return self.inner.complete(query)


SCRIPTED_NAMES = ("oracle", "always-sat", "always-unsat", "timeout-<percent>")


def scripted_backend(spec: str) -> Backend:
    """Build a scripted client from ``scripted:<name>``."""
    kind = spec.split(":", 1)[1] if spec.startswith("scripted:") else spec
    if kind == "oracle":
        return OracleClient()
    if kind == "always-sat":
        return ConstantClient(Decision.SAT)
    if kind == "always-unsat":
        return ConstantClient(Decision.UNSAT)
    if kind.startswith("timeout-"):
        pct = kind[len("timeout-"):]
        if pct.isdigit() and int(pct) <= 100:
            return TimeoutClient(int(pct) / 100)
    raise ValueError(f"unknown scripted backend {spec!r}; choose from {', '.join(SCRIPTED_NAMES)}")
