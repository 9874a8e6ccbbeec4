"""Shared generators for small formulas used across the test modules."""

import itertools
import random

from satprobe.cnf import CnfFormula


def complete_3cnf(variables=(1, 2, 3), n=None):
    """All eight sign patterns over three variables: UNSAT."""
    clauses = [tuple(s * v for s, v in zip(signs, variables)) for signs in itertools.product((1, -1), repeat=3)]
    return CnfFormula(n or max(variables), tuple(clauses))


def random_cnf(rng, n, m, width, distinct=True):
    clauses = []
    for _ in range(m):
        if distinct:
            vs = rng.sample(range(1, n + 1), width)
        else:
            vs = [rng.randint(1, n) for _ in range(width)]
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return CnfFormula(n, tuple(clauses))


def small_3cnf_corpus(count=1000, seed=0):
    """3-CNFs with n <= 5 and m <= 8 that exercise both labels.

    Uniform draws at this size are almost always satisfiable, so the corpus
    mixes three families by index mod 5: distinct-variable clauses (0, 1),
    literals drawn with replacement (2, 3), and the complete 8-pattern formula
    over three random variables, shuffled and with one literal flipped half
    the time (4).
    """
    rng = random.Random(seed)
    out = []
    for i in range(count):
        kind = i % 5
        if kind in (0, 1):
            out.append(random_cnf(rng, rng.randint(3, 5), rng.randint(0, 8), 3))
        elif kind in (2, 3):
            out.append(random_cnf(rng, rng.randint(1, 5), rng.randint(0, 8), 3, distinct=False))
        else:
            n = rng.randint(3, 5)
            f = complete_3cnf(tuple(rng.sample(range(1, n + 1), 3)), n)
            clauses = [list(c) for c in f.clauses]
            rng.shuffle(clauses)
            if rng.random() < 0.5:
                c = rng.randrange(8)
                p = rng.randrange(3)
                clauses[c][p] = -clauses[c][p]
            out.append(CnfFormula(n, tuple(tuple(c) for c in clauses)))
    return out
