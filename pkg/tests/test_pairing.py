import random
from fractions import Fraction

import pytest

from helpers import complete_3cnf
from satprobe.cnf import CnfFormula
from satprobe.pairing import (
    DeleteClause,
    FlipPolarity,
    InstancePair,
    PairingError,
    ReplaceLiteral,
    build_pair_set,
    check_edit,
    edit_from_dict,
    make_sat_twin,
    replay,
)
from satprobe.solver import Status, brute_force, solve_2sat


def test_complete_formula_needs_one_flip():
    pair = make_sat_twin(complete_3cnf(), seed=1)
    assert len(pair.edits) == 1 and isinstance(pair.edits[0], FlipPolarity)
    assert brute_force(pair.sat_formula).is_sat
    assert pair.alpha_unsat == pair.alpha_sat
    assert pair.verify()


def test_delete_stage_reaches_empty_conjunction():
    # a single empty clause has nothing to flip or replace
    f = CnfFormula(1, ((),))
    pair = make_sat_twin(f, seed=0, oracle=solve_2sat)
    assert pair.edits == (DeleteClause(0),)
    assert pair.sat_formula.clauses == ()
    assert pair.verify(solve_2sat)


def test_unsat_input_required():
    with pytest.raises(ValueError):
        make_sat_twin(CnfFormula(3, ((1, 2, 3),)))


def test_pairing_error_reports_stages():
    f = CnfFormula(1, ((), (), ()))  # three empty clauses: no edit of the first two stages applies
    with pytest.raises(PairingError) as err:
        make_sat_twin(f, oracle=solve_2sat)
    assert err.value.stages_attempted == ("flip", "replace", "delete")


def test_edits_apply_and_serialize():
    f = CnfFormula(4, ((1, 2, 3), (-1, -2, 4)))
    assert FlipPolarity(0, 1).apply(f).clauses[0] == (1, -2, 3)
    assert ReplaceLiteral(1, 2, 3, False).apply(f).clauses[1] == (-1, -2, -3)
    assert DeleteClause(0).apply(f).clauses == ((-1, -2, 4),)
    for e in (FlipPolarity(0, 1), ReplaceLiteral(1, 2, 3, False), DeleteClause(0)):
        assert edit_from_dict(e.to_dict()) == e
    with pytest.raises(IndexError):
        check_edit(f, FlipPolarity(5, 0))
    with pytest.raises(ValueError):
        check_edit(f, ReplaceLiteral(0, 0, 9, True))
    with pytest.raises(ValueError):
        edit_from_dict({"kind": "swap"})
    assert replay(f, [FlipPolarity(0, 1), DeleteClause(1)]).clauses == ((1, -2, 3),)


def test_pair_invariants():
    f = complete_3cnf()
    with pytest.raises(ValueError):
        InstancePair(f, f, (), None, None)


def test_pair_set_k3():
    ps = build_pair_set(8, 15, seed=5)
    assert len(ps) == 15
    for pair in ps:
        assert pair.unsat_result.status is Status.UNSAT and pair.sat_result.status is Status.SAT
        assert brute_force(pair.unsat_formula).is_unsat and brute_force(pair.sat_formula).is_sat
        assert 1 <= len(pair.edits) <= 3
        assert abs(pair.alpha_unsat - pair.alpha_sat) <= Fraction(1, pair.n)
        assert replay(pair.unsat_formula, pair.edits) == pair.sat_formula
    assert ps.stats["unsat_draws"] >= 15
    again = build_pair_set(8, 15, seed=5)
    assert [p.sat_formula for p in again] == [p.sat_formula for p in ps]


def test_pair_set_k2():
    ps = build_pair_set(10, 70, seed=2, k=2)
    assert len(ps) == 70
    assert all(p.verify(solve_2sat) for p in ps)
    assert all(p.unsat_formula.max_width <= 2 for p in ps)


def test_pair_set_validation():
    with pytest.raises(ValueError):
        build_pair_set(5, 0)
    with pytest.raises(ValueError):
        build_pair_set(5, 1, k=4)
