"""Turning free-form model output into a ``Prediction``.

Strict JSON is tried first; failing that, a keyword scan looks for the last
whole-word decision.  Anything else becomes ABSTAIN with the raw text kept.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any, Optional, Union

from ..labels import Decision
from ..reductions import PackingWitness
from .prompts import Representation

Witness = Union[dict[int, bool], frozenset, PackingWitness]


@dataclass
class Prediction:
    decision: Decision
    branches: Optional[int] = None
    conflicts: Optional[int] = None
    witness: Optional[Witness] = None
    raw_text: str = ""
    latency: float = 0.0
    error: Optional[str] = None

    def __post_init__(self) -> None:
        if self.witness is not None and not self.decision.affirmative:
            self.witness = None

    @classmethod
    def abstain(cls, raw_text: str = "", error: Optional[str] = None, latency: float = 0.0) -> "Prediction":
        return cls(Decision.ABSTAIN, raw_text=raw_text, error=error, latency=latency)

    def to_dict(self) -> dict:
        return {
            "decision": self.decision.value,
            "branches": self.branches,
            "conflicts": self.conflicts,
            "witness": witness_to_json(self.witness),
            "raw_text": self.raw_text,
            "latency": round(self.latency, 6),
            "error": self.error,
        }

    @classmethod
    def from_dict(cls, d: dict, representation: Representation) -> "Prediction":
        return cls(
            decision=Decision(d["decision"]),
            branches=d.get("branches"),
            conflicts=d.get("conflicts"),
            witness=witness_from_json(d.get("witness"), representation),
            raw_text=d.get("raw_text", ""),
            latency=float(d.get("latency", 0.0)),
            error=d.get("error"),
        )


def witness_to_json(witness: Optional[Witness]) -> Any:
    if witness is None:
        return None
    if isinstance(witness, PackingWitness):
        return witness.to_dict()
    if isinstance(witness, frozenset):
        return sorted(witness)
    return [v if val else -v for v, val in sorted(witness.items())]


def witness_from_json(data: Any, representation: Representation) -> Optional[Witness]:
    if data is None:
        return None
    if representation is Representation.CNF:
        return {abs(int(l)): int(l) > 0 for l in data}
    if representation is Representation.VERTEX_COVER:
        return frozenset(str(v) for v in data)
    return PackingWitness.from_dict(data)


_DECISION_WORDS = {
    Representation.CNF: {
        "SAT": Decision.SAT,
        "SATISFIABLE": Decision.SAT,
        "UNSAT": Decision.UNSAT,
        "UNSATISFIABLE": Decision.UNSAT,
    },
    Representation.VERTEX_COVER: {"YES": Decision.YES, "NO": Decision.NO},
    Representation.PACKING: {"YES": Decision.YES, "NO": Decision.NO},
}

_TRUE_WORDS = {"true", "t", "1", "yes"}
_FALSE_WORDS = {"false", "f", "0", "no"}
_VAR_KEY = re.compile(r"^\s*x?(\d+)\s*$", re.IGNORECASE)
_ASSIGN_SCAN = re.compile(r"\bx(\d+)\s*(?:=|:|->|is)\s*(true|false|t|f|1|0)\b", re.IGNORECASE)
_COUNT_SCAN = {
    "branches": re.compile(r"\b(?:branches|decisions?)\b[^0-9\n]{0,40}(\d+)", re.IGNORECASE),
    "conflicts": re.compile(r"\bconflicts?\b[^0-9\n]{0,40}(\d+)", re.IGNORECASE),
}
_KEYWORDS = {
    Representation.CNF: re.compile(r"\b(UNSATISFIABLE|SATISFIABLE)\b"),
    Representation.VERTEX_COVER: re.compile(r"\b(YES|NO)\b"),
    Representation.PACKING: re.compile(r"\b(YES|NO)\b"),
}


def _json_objects(text: str) -> list[dict]:
    """Every decodable top-level JSON object in ``text``, in order of appearance."""
    decoder = json.JSONDecoder()
    found = []
    i = 0
    while True:
        i = text.find("{", i)
        if i < 0:
            return found
        try:
            obj, end = decoder.raw_decode(text, i)
        except json.JSONDecodeError:
            i += 1
            continue
        if isinstance(obj, dict):
            found.append(obj)
        i = end


def _to_int(value: Any) -> Optional[int]:
    if isinstance(value, bool):
        return None
    if isinstance(value, int):
        return value if value >= 0 else None
    if isinstance(value, str) and value.strip().isdigit():
        return int(value.strip())
    return None


def _to_bool(value: Any) -> Optional[bool]:
    if isinstance(value, bool):
        return value
    if isinstance(value, int) and value in (0, 1):
        return bool(value)
    if isinstance(value, str):
        v = value.strip().lower()
        if v in _TRUE_WORDS:
            return True
        if v in _FALSE_WORDS:
            return False
    return None


def _assignment_from_json(data: Any) -> Optional[dict[int, bool]]:
    out: dict[int, bool] = {}
    if isinstance(data, dict):
        for key, value in data.items():
            m = _VAR_KEY.match(str(key))
            b = _to_bool(value)
            if m is None or b is None:
                return None
            out[int(m.group(1))] = b
        return out
    if isinstance(data, list) and all(isinstance(l, int) and not isinstance(l, bool) and l != 0 for l in data):
        return {abs(l): l > 0 for l in data}
    return None


def _witness_from_json(obj: dict, rep: Representation) -> Optional[Witness]:
    if rep is Representation.CNF:
        for key in ("assignment", "witness", "model", "values"):
            if key in obj:
                return _assignment_from_json(obj[key])
        return None
    if rep is Representation.VERTEX_COVER:
        for key in ("cover", "witness"):
            if isinstance(obj.get(key), list):
                return frozenset(str(v) for v in obj[key])
        return None
    source = obj.get("witness") if isinstance(obj.get("witness"), dict) else obj
    if "selected_rods" not in source:
        return None
    try:
        return PackingWitness.from_dict(source)
    except (TypeError, ValueError, KeyError, IndexError):
        return None


def _from_json(text: str, rep: Representation) -> Optional[Prediction]:
    words = _DECISION_WORDS[rep]
    for obj in reversed(_json_objects(text)):
        raw = obj.get("decision", obj.get("answer"))
        if not isinstance(raw, str):
            continue
        decision = words.get(raw.strip().upper())
        if decision is None:
            continue
        return Prediction(
            decision=decision,
            branches=_to_int(obj.get("branches")),
            conflicts=_to_int(obj.get("conflicts")),
            witness=_witness_from_json(obj, rep) if decision.affirmative else None,
            raw_text=text,
        )
    return None


def _from_keywords(text: str, rep: Representation) -> Optional[Prediction]:
    pattern = _KEYWORDS[rep]
    hits = pattern.findall(text)
    if not hits and rep is Representation.CNF:
        hits = re.findall(r"\b(unsatisfiable|satisfiable)\b", text, re.IGNORECASE)
    if not hits:
        return None
    decision = _DECISION_WORDS[rep][hits[-1].upper()]
    counts = {}
    for name, rx in _COUNT_SCAN.items():
        m = rx.findall(text)
        counts[name] = int(m[-1]) if m else None
    witness = None
    if rep is Representation.CNF and decision.affirmative:
        pairs = _ASSIGN_SCAN.findall(text)
        if pairs:
            witness = {int(v): val.lower() in _TRUE_WORDS for v, val in pairs}
    return Prediction(decision, counts["branches"], counts["conflicts"], witness, raw_text=text)


def parse_response(text: Optional[str], representation: Union[Representation, str]) -> Prediction:
    """Never raises; unparseable input yields ABSTAIN."""
    rep = Representation(representation)
    if not isinstance(text, str):
        return Prediction.abstain("" if text is None else repr(text), error="non-text response")
    try:
        return _from_json(text, rep) or _from_keywords(text, rep) or Prediction.abstain(text, error="no decision found")
    except Exception as exc:  # parsing must be total
        return Prediction.abstain(text, error=f"parse failure: {exc!r}")
