"""Seeded random k-SAT generation, phase sweeps and low-density UNSAT stress sets."""

from __future__ import annotations

import csv
import hashlib
import io
import logging
import random
import statistics
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .cnf import CnfFormula
from .solver import SolveBudget, SolveResult, Status, solve_2sat, solve_cdcl
from .solver.result import UNLIMITED

log = logging.getLogger(__name__)

LOW_ALPHA_3SAT = (3.5, 3.6, 3.7, 3.8, 3.9, 4.0)
# 2-SAT analogue of the low-density band: just above the alpha_c(2) = 1 threshold
LOW_ALPHA_2SAT = (1.0, 1.1, 1.2, 1.3, 1.4, 1.5)
SWEEP_ALPHAS = (3.5, 4.0, 4.5, 5.0, 5.5)
MIN_ACCEPT_RATE = 1e-4  # one acceptance per 10,000 attempts


class GenerationError(RuntimeError):
    def __init__(self, message: str, stats: Optional[dict] = None):
        super().__init__(message)
        self.stats = stats or {}


def derive_seed(seed: int, *keys: object) -> int:
    """Stable 64-bit child seed; independent of call order and process."""
    text = ":".join([str(int(seed)), *map(str, keys)])
    return int.from_bytes(hashlib.blake2b(text.encode(), digest_size=8).digest(), "big")


def num_clauses_for(alpha: float, n: int) -> int:
    """round(alpha * n), half-up, computed on the decimal value of alpha."""
    return int((Decimal(str(alpha)) * n).quantize(Decimal(1), rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class GeneratorConfig:
    k: int
    n: int
    alpha: float
    seed: int = 0
    count: int = 1

    def __post_init__(self) -> None:
        if self.k not in (2, 3):
            raise ValueError(f"k must be 2 or 3, got {self.k}")
        if self.n < self.k:
            raise ValueError(f"n={self.n} is smaller than clause width k={self.k}")
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.num_clauses < 1:
            raise ValueError(f"round(alpha*n) = {self.num_clauses} < 1")

    @property
    def num_clauses(self) -> int:
        return num_clauses_for(self.alpha, self.n)


def _sample_formula(k: int, n: int, num_clauses: int, rng: random.Random) -> CnfFormula:
    variables = range(1, n + 1)
    clauses = []
    for _ in range(num_clauses):
        picked = rng.sample(variables, k)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in picked))
    return CnfFormula(n, tuple(clauses))


def random_ksat(config: GeneratorConfig) -> CnfFormula:
    """One formula: distinct variables per clause, fair polarities, independent clauses."""
    return _sample_formula(config.k, config.n, config.num_clauses, random.Random(config.seed))


def random_ksat_batch(config: GeneratorConfig) -> list[CnfFormula]:
    """``config.count`` formulas, instance ``i`` seeded with ``derive_seed(seed, i)``."""
    return [
        random_ksat(GeneratorConfig(config.k, config.n, config.alpha, derive_seed(config.seed, i)))
        for i in range(config.count)
    ]


def oracle_for(k: int) -> Callable[[CnfFormula], SolveResult]:
    return solve_2sat if k == 2 else solve_cdcl


@dataclass(frozen=True)
class GeneratedInstance:
    formula: CnfFormula
    alpha: float
    seed: int
    result: SolveResult

    @property
    def label(self) -> Status:
        return self.result.status


@dataclass(frozen=True)
class PhaseRow:
    alpha: float
    count: int
    sat_fraction: float
    median_decisions: Optional[float]
    median_conflicts: Optional[float]
    unknown_fraction: float


PHASE_COLUMNS = ("alpha", "count", "sat_fraction", "median_decisions", "median_conflicts", "unknown_fraction")


@dataclass
class PhaseReport:
    k: int
    n: int
    seed: int
    rows: list[PhaseRow] = field(default_factory=list)
    instances: dict[float, list[GeneratedInstance]] = field(default_factory=dict, repr=False)

    def row(self, alpha: float) -> PhaseRow:
        for r in self.rows:
            if r.alpha == alpha:
                return r
        raise KeyError(alpha)

    def peak_alpha(self) -> float:
        """Alpha with the largest median decision count."""
        rows = [r for r in self.rows if r.median_decisions is not None]
        return max(rows, key=lambda r: r.median_decisions).alpha

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(PHASE_COLUMNS)
        for r in self.rows:
            writer.writerow([
                _fmt(r.alpha), r.count, _fmt(r.sat_fraction), _fmt(r.median_decisions),
                _fmt(r.median_conflicts), _fmt(r.unknown_fraction),
            ])
        return buf.getvalue()


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(round(x, 12))
    return str(x)


def summarize_phase(alpha: float, instances: Sequence[GeneratedInstance]) -> PhaseRow:
    """Aggregate solver outcomes at one density; UNKNOWN results are excluded from medians."""
    known = [g.result for g in instances if g.result.status is not Status.UNKNOWN]
    count = len(instances)
    unknown = count - len(known)
    sat = sum(r.status is Status.SAT for r in known)
    return PhaseRow(
        alpha=alpha,
        count=count,
        sat_fraction=sat / len(known) if known else 0.0,
        median_decisions=float(statistics.median(r.decisions for r in known)) if known else None,
        median_conflicts=float(statistics.median(r.conflicts for r in known)) if known else None,
        unknown_fraction=unknown / count if count else 0.0,
    )


def sweep_phase(
    k: int,
    n: int,
    alphas: Iterable[float],
    count: int,
    seed: int,
    budget: SolveBudget = UNLIMITED,
    keep_instances: bool = False,
) -> PhaseReport:
    """Generate ``count`` instances per density and solve each with CDCL."""
    alphas = sorted(set(float(a) for a in alphas))
    if not alphas or any(a <= 0 for a in alphas):
        raise ValueError("alphas must be a nonempty set of positive values")
    if count < 1:
        raise ValueError("count must be >= 1")
    report = PhaseReport(k=k, n=n, seed=seed)
    for alpha in alphas:
        generated = []
        for i in range(count):
            s = derive_seed(seed, alpha, i)
            f = random_ksat(GeneratorConfig(k, n, alpha, s))
            generated.append(GeneratedInstance(f, alpha, s, solve_cdcl(f, budget)))
        row = summarize_phase(alpha, generated)
        log.info("alpha=%.2f sat_fraction=%.3f median_decisions=%s", alpha, row.sat_fraction, row.median_decisions)
        report.rows.append(row)
        if keep_instances:
            report.instances[alpha] = generated
    return report


@dataclass
class StressSet:
    """Verified-UNSAT formulas with rejection statistics.  Iterates over formulas."""

    n: int
    k: int
    instances: list[GeneratedInstance]
    attempts: int
    rejected_sat: int
    rejected_unknown: int = 0

    @property
    def formulas(self) -> list[CnfFormula]:
        return [g.formula for g in self.instances]

    def __len__(self) -> int:
        return len(self.instances)

    def __iter__(self) -> Iterator[CnfFormula]:
        return iter(self.formulas)

    def __getitem__(self, i: int) -> CnfFormula:
        return self.instances[i].formula

    @property
    def acceptance_rate(self) -> float:
        return len(self.instances) / self.attempts if self.attempts else 0.0

    def stats(self) -> dict:
        return {
            "attempts": self.attempts,
            "accepted": len(self.instances),
            "rejected_sat": self.rejected_sat,
            "rejected_unknown": self.rejected_unknown,
            "acceptance_rate": self.acceptance_rate,
        }


def iter_unsat_low_alpha(
    n: int,
    alpha_choices: Sequence[float],
    seed: int,
    k: int = 3,
    budget: SolveBudget = UNLIMITED,
    min_accept_rate: float = MIN_ACCEPT_RATE,
) -> Iterator[tuple[GeneratedInstance, int, int]]:
    """Endless stream of verified-UNSAT instances.

    Yields ``(instance, attempts_so_far, rejected_unknown)``; raises
    ``GenerationError`` once accepted/attempts drops under ``min_accept_rate``.
    """
    choices = sorted(set(float(a) for a in alpha_choices))
    if not choices:
        raise ValueError("alpha_choices must be nonempty")
    oracle = oracle_for(k)
    picker = random.Random(derive_seed(seed, "alpha"))
    floor = int(round(1 / min_accept_rate))
    attempts = accepted = unknown = 0
    while True:
        alpha = picker.choice(choices)
        s = derive_seed(seed, "draw", attempts)
        attempts += 1
        f = random_ksat(GeneratorConfig(k, n, alpha, s))
        result = oracle(f) if k == 2 else solve_cdcl(f, budget)
        if result.status is Status.UNSAT:
            accepted += 1
            yield GeneratedInstance(f, alpha, s, result), attempts, unknown
        elif result.status is Status.UNKNOWN:
            unknown += 1
        if attempts >= floor * (accepted + 1):
            raise GenerationError(
                f"acceptance rate fell below {min_accept_rate:g}: {accepted} UNSAT in {attempts} draws "
                f"(n={n}, k={k}, alphas={choices})",
                {"attempts": attempts, "accepted": accepted, "rejected_unknown": unknown},
            )


def generate_unsat_low_alpha(
    n: int,
    alpha_choices: Sequence[float] = LOW_ALPHA_3SAT,
    count: int = 70,
    seed: int = 0,
    k: int = 3,
    budget: SolveBudget = UNLIMITED,
    min_accept_rate: float = MIN_ACCEPT_RATE,
) -> StressSet:
    """Rejection-sample ``count`` verified-UNSAT formulas at densities drawn from ``alpha_choices``."""
    if count < 1:
        raise ValueError("count must be >= 1")
    accepted: list[GeneratedInstance] = []
    attempts = unknown = 0
    stream = iter_unsat_low_alpha(n, alpha_choices, seed, k, budget, min_accept_rate)
    for inst, attempts, unknown in stream:
        accepted.append(inst)
        if len(accepted) == count:
            break
    return StressSet(
        n=n,
        k=k,
        instances=accepted,
        attempts=attempts,
        rejected_sat=attempts - len(accepted) - unknown,
        rejected_unknown=unknown,
    )
