import itertools

import pytest

from helpers import complete_3cnf, small_3cnf_corpus
from satprobe.cnf import CnfFormula
from satprobe.reductions import (
    PackingInstance,
    PackingWitness,
    VertexCoverInstance,
    check_cover,
    check_packing,
    cover_from_assignment,
    pad_to_width3,
    packing_brute_force,
    packing_from_assignment,
    to_packing,
    to_vertex_cover,
    vc_brute_force,
)
from satprobe.solver import brute_force

SINGLE = CnfFormula(3, ((1, 2, 3),))


def test_padding():
    assert pad_to_width3(CnfFormula(2, ((1,), (1, -2)))) == [(1, 1, 1), (1, -2, 1)]
    with pytest.raises(ValueError):
        pad_to_width3(CnfFormula(4, ((1, 2, 3, 4),)))
    with pytest.raises(ValueError):
        to_vertex_cover(CnfFormula(4, ((1, 2, 3, 4),)))
    with pytest.raises(ValueError):
        to_packing(CnfFormula(1, ((),)))


def test_single_clause_vc_shape_and_exhaustive_cover():
    vc = to_vertex_cover(SINGLE)
    assert len(vc.vertices) == 9 and len(vc.edges) == 9 and vc.k == 5
    found = any(check_cover(vc, c) for c in itertools.combinations(vc.labels, 5))
    assert found and vc_brute_force(vc)


def test_complete_formula_has_no_cover():
    vc = to_vertex_cover(complete_3cnf())
    assert vc.k == 19
    assert not vc_brute_force(vc)


def test_empty_formula_cover():
    vc = to_vertex_cover(CnfFormula(2))
    assert (len(vc.vertices), len(vc.edges), vc.k) == (4, 2, 2)
    assert vc_brute_force(vc)


def test_check_cover_examples():
    vc = to_vertex_cover(SINGLE)
    assert check_cover(vc, {"x1", "~x2", "~x3", "c0.1", "c0.2"})
    assert not check_cover(vc, set())
    all_but_one = set(vc.labels) - {"c0.0"}
    assert len(all_but_one) == vc.k + 3
    assert not check_cover(vc, set(vc.labels))
    with pytest.raises(ValueError):
        check_cover(vc, {"x9"})


def test_vc_brute_force_triangle_and_limit():
    tri = VertexCoverInstance.from_dict(
        {"vertices": [{"label": s, "kind": "triangle"} for s in "abc"], "edges": [["a", "b"], ["b", "c"], ["a", "c"]], "k": 1}
    )
    assert not vc_brute_force(tri)
    tri2 = VertexCoverInstance(tri.vertices, tri.edges, 2)
    assert vc_brute_force(tri2)
    big = to_vertex_cover(CnfFormula(4, ((1, 2, 3),) * 8))
    with pytest.raises(ValueError):
        vc_brute_force(big)
    assert vc_brute_force(big, max_vertices=32)


def test_vc_serialization_round_trip():
    vc = to_vertex_cover(CnfFormula(3, ((1, -2, 3), (-1, 2, 2))))
    assert VertexCoverInstance.from_dict(vc.to_dict()) == vc


def test_packing_shapes():
    p = to_packing(SINGLE)
    assert len(p.rods) == 6 and len(p.tokens) == 1 and len(p.tokens[0].allowed) == 3
    assert packing_brute_force(p)
    assert not packing_brute_force(to_packing(complete_3cnf()))
    empty = to_packing(CnfFormula(2))
    assert empty.tokens == () and packing_brute_force(empty)
    assert PackingInstance.from_dict(p.to_dict()) == p


def test_check_packing_examples():
    p = to_packing(SINGLE)
    ok = PackingWitness(("x1:T", "x2:T", "x3:T"), {"c0": ("x1:T", 1)})
    assert check_packing(p, ok)
    assert not check_packing(p, PackingWitness(("x1:F", "x2:T", "x3:T"), {"c0": ("x1:T", 1)}))
    assert not check_packing(p, PackingWitness(("x1:T", "x1:F", "x2:T", "x3:T"), {"c0": ("x1:T", 1)}))
    assert not check_packing(p, PackingWitness(("x1:T", "x2:T", "x3:T"), {"c0": ("x1:T", 2)}))
    assert not check_packing(p, PackingWitness(("x1:T", "x2:T", "x3:T"), {}))
    with pytest.raises(ValueError):
        check_packing(p, PackingWitness(("x9:T",), {}))
    with pytest.raises(ValueError):
        check_packing(p, PackingWitness(("x1:T", "x2:T", "x3:T"), {"c7": ("x1:T", 1)}))
    assert PackingWitness.from_dict(ok.to_dict()) == ok


def test_witness_builders_need_a_model():
    with pytest.raises(ValueError):
        cover_from_assignment(SINGLE, {1: False, 2: False, 3: False})
    with pytest.raises(ValueError):
        packing_from_assignment(SINGLE, {1: False, 2: False, 3: False})


def test_label_preservation_on_corpus_sample():
    for f in small_3cnf_corpus(200, seed=9):
        sat = brute_force(f).is_sat
        vc, pk = to_vertex_cover(f), to_packing(f)
        assert vc_brute_force(vc, max_vertices=34) == sat
        assert packing_brute_force(pk) == sat
        if sat:
            model = brute_force(f).model
            assert check_cover(vc, cover_from_assignment(f, model))
            assert check_packing(pk, packing_from_assignment(f, model))
