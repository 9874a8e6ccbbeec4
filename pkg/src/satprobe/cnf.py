"""CNF formulas, assignment evaluation and DIMACS I/O.

Literals are stored DIMACS-style as nonzero signed integers: ``v`` is the
positive literal of variable ``v`` and ``-v`` its negation.  Variables are
1-indexed and never renumbered.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple, Sequence, TextIO, Union

#: Reference satisfiability threshold for random 3-SAT.
ALPHA_CRITICAL_3SAT = 4.26

Clause = tuple[int, ...]


class DimacsError(ValueError):
    """Malformed DIMACS input.  ``line`` is 1-based (0 when not tied to a line)."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class Literal(NamedTuple):
    variable: int
    polarity: bool  # True = positive literal

    @classmethod
    def from_int(cls, lit: int) -> "Literal":
        if lit == 0:
            raise ValueError("0 is not a literal")
        return cls(abs(lit), lit > 0)

    def to_int(self) -> int:
        if self.variable < 1:
            raise ValueError(f"variable index must be >= 1, got {self.variable}")
        return self.variable if self.polarity else -self.variable

    def __str__(self) -> str:
        return f"x{self.variable}" if self.polarity else f"¬x{self.variable}"


@dataclass(frozen=True)
class CnfFormula:
    """A conjunction of clauses over variables ``1..num_variables``.

    Clause order, literal order and duplicate clauses are preserved.
    """

    num_variables: int
    clauses: tuple[Clause, ...] = ()

    def __post_init__(self) -> None:
        if self.num_variables < 0:
            raise ValueError("num_variables must be nonnegative")
        # normalise lists to tuples so formulas hash and compare structurally
        clauses = tuple(tuple(int(l) for l in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        for i, clause in enumerate(clauses):
            for lit in clause:
                if lit == 0:
                    raise ValueError(f"clause {i}: literal 0 is not allowed")
                if abs(lit) > self.num_variables:
                    raise ValueError(
                        f"clause {i}: variable {abs(lit)} exceeds num_variables={self.num_variables}"
                    )

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def __len__(self) -> int:
        return len(self.clauses)

    def __iter__(self):
        return iter(self.clauses)

    @property
    def max_width(self) -> int:
        return max((len(c) for c in self.clauses), default=0)

    def is_k_cnf(self, k: int) -> bool:
        return all(len(c) == k for c in self.clauses)

    def literals(self, index: int) -> list[Literal]:
        return [Literal.from_int(l) for l in self.clauses[index]]

    def with_clauses(self, clauses: Iterable[Sequence[int]]) -> "CnfFormula":
        return CnfFormula(self.num_variables, tuple(tuple(c) for c in clauses))

    def to_text(self) -> str:
        """Human-readable rendering, e.g. ``(x1 ∨ ¬x2) ∧ (x3)``."""
        if not self.clauses:
            return "⊤ (empty conjunction)"
        parts = []
        for clause in self.clauses:
            body = " ∨ ".join(str(Literal.from_int(l)) for l in clause) or "⊥"
            parts.append(f"({body})")
        return " ∧ ".join(parts)


Assignment = Mapping[int, bool]


def evaluate(formula: CnfFormula, sigma: Assignment) -> bool:
    """True iff every clause has a literal made true by ``sigma``.

    ``sigma`` must define every variable ``1..N``; a missing variable raises
    ``KeyError`` even if the formula does not mention it.
    """
    missing = [v for v in range(1, formula.num_variables + 1) if v not in sigma]
    if missing:
        raise KeyError(f"assignment is missing variables {missing[:10]}")
    for clause in formula.clauses:
        for lit in clause:
            if sigma[abs(lit)] == (lit > 0):
                break
        else:
            return False
    return True


def clause_density(formula: CnfFormula) -> Fraction:
    """Exact clause-to-variable ratio L/N."""
    if formula.num_variables == 0:
        raise ValueError("clause density is undefined for N = 0")
    return Fraction(formula.num_clauses, formula.num_variables)


def parse_dimacs(text: Union[str, TextIO]) -> CnfFormula:
    """Parse DIMACS CNF.

    Clauses may span lines and several may share one line; each is terminated
    by ``0``.  Comment lines start with ``c``; a trailing ``%`` line (SATLIB
    style) ends the body.
    """
    stream = io.StringIO(text) if isinstance(text, str) else text
    num_vars = num_clauses = None
    header_line = 0
    clauses: list[Clause] = []
    current: list[int] = []
    current_start = 0
    lineno = 0
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            if num_vars is not None:
                raise DimacsError("duplicate header", lineno)
            fields = line.split()
            if len(fields) != 4 or fields[0] != "p" or fields[1] != "cnf":
                raise DimacsError(f"malformed header {line!r}", lineno)
            try:
                num_vars, num_clauses = int(fields[2]), int(fields[3])
            except ValueError:
                raise DimacsError(f"non-integer counts in header {line!r}", lineno) from None
            if num_vars < 0 or num_clauses < 0:
                raise DimacsError("negative counts in header", lineno)
            header_line = lineno
            continue
        if num_vars is None:
            raise DimacsError("clause data before 'p cnf' header", lineno)
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise DimacsError(f"non-integer token {token!r}", lineno) from None
            if lit == 0:
                clauses.append(tuple(current))
                current = []
                continue
            if abs(lit) > num_vars:
                raise DimacsError(
                    f"literal {lit} exceeds declared variable count {num_vars}", lineno
                )
            if not current:
                current_start = lineno
            current.append(lit)
    if num_vars is None:
        raise DimacsError("missing 'p cnf' header", lineno)
    if current:
        raise DimacsError("last clause is not terminated by 0", current_start)
    if len(clauses) != num_clauses:
        raise DimacsError(
            f"header declares {num_clauses} clauses but {len(clauses)} were read",
            header_line,
        )
    return CnfFormula(num_vars, tuple(clauses))


def emit_dimacs(formula: CnfFormula, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {formula.num_variables} {formula.num_clauses}")
    lines.extend(" ".join([*map(str, clause), "0"]) for clause in formula.clauses)
    return "\n".join(lines) + "\n"


def read_dimacs(path: Union[str, Path]) -> CnfFormula:
    with open(path, encoding="utf-8") as fh:
        return parse_dimacs(fh)


def write_dimacs(formula: CnfFormula, path: Union[str, Path], comments: Sequence[str] = ()) -> None:
    Path(path).write_text(emit_dimacs(formula, comments), encoding="utf-8")


def model_to_dimacs(model: Assignment) -> str:
    """``v`` lines for a model, terminated by ``0``."""
    lits = [str(v if model[v] else -v) for v in sorted(model)]
    return "v " + " ".join([*lits, "0"])
