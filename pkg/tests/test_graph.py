"""Orbit graph layer: complete-set search, classification, enumeration,
morphism graph structure, exceptional sets, backward kernels."""

from corrdyn.corr import build, corr_sum, transpose
from corrdyn.graph import (
    adjacency_matrix,
    backward_closure,
    backward_kernel_search,
    classify_set,
    complete_set_search,
    enumerate_complete_sets,
    exceptional_set_morphism,
    morphism_graph_classify,
    path_count,
    report_to_dot,
    report_to_json,
)
from corrdyn.fields import make_prime_field

from _helpers import (
    F5,
    Q,
    cusp_divisor,
    doubling_map,
    inf,
    pt,
    rf,
    square_map,
)


def test_complete_set_search_fixed_points():
    sq = square_map()
    rep0 = complete_set_search(sq, pt(Q, 0))
    assert rep0.certified and len(rep0.vertices) == 1
    assert rep0.edges[0].e1 == 1 and rep0.edges[0].e2 == 2
    repi = complete_set_search(sq, inf(Q))
    assert repi.certified and repi.vertices[0].is_infinity


def test_complete_set_search_budget():
    # the backward orbit of 2 under squaring needs irrational square roots
    rep2 = complete_set_search(square_map(), pt(Q, 2), max_size=12)
    assert not rep2.certified


def test_classification_flags():
    rep0 = complete_set_search(square_map(), pt(Q, 0))
    cls0 = rep0.classification
    assert cls0.ram_increasing
    assert not cls0.equiramified and not cls0.consistently_ramified
    cls = classify_set(doubling_map(), [pt(Q, 0), inf(Q)])
    assert cls.etale and cls.consistently_ramified
    cub = rf(Q, [0, 0, 0, 1])
    cls3 = classify_set(build(Q, f=cub), [inf(Q)])
    assert not cls3.equiramified


def test_path_counts():
    sq5 = build(F5, f=rf(F5, [0, 0, 1]))
    S = [pt(F5, a) for a in (1, 2, 3, 4)]
    assert path_count(sq5, S, S[1], S[1], 0) == 1
    assert path_count(sq5, S, S[1], S[0], 2) == 1


def test_enumerate_complete_sets():
    sq5 = build(F5, f=rf(F5, [0, 0, 1]))
    reps = enumerate_complete_sets(sq5, 1)
    verts = {frozenset(str(v) for v in r.vertices): r.status for r in reps}
    assert len(reps) == 3
    assert verts[frozenset({"[0:1]"})] == "Certified"
    assert verts[frozenset({"[1:0]"})] == "Certified"
    assert verts[frozenset({"[1:1]", "[2:1]", "[3:1]", "[4:1]"})] == "BudgetExceeded"
    dbl5 = build(F5, f=rf(F5, [0, 2]))
    reps2 = enumerate_complete_sets(dbl5, 1)
    assert len(reps2) == 3 and all(r.status == "Certified" for r in reps2)
    assert enumerate_complete_sets(sq5, 0) == []


def test_component_counts_grow_with_extension():
    sq5 = build(F5, f=rf(F5, [0, 0, 1]))
    dbl5 = build(F5, f=rf(F5, [0, 2]))
    for c, want in ((sq5, [3, 4, 10]), (dbl5, [3, 8, 38])):
        got = [len(enumerate_complete_sets(c, K)) for K in (1, 2, 3)]
        assert got == want


def test_morphism_graph_classify():
    sq5 = build(F5, f=rf(F5, [0, 0, 1]))
    m0 = morphism_graph_classify(sq5, pt(F5, 0))
    assert m0["cycle_length"] == 1 and m0["cycle_totally_ramified"]
    assert m0["finite_complete_criterion"] and not m0["etale_cycle"]
    m2 = morphism_graph_classify(sq5, pt(F5, 2), depth=2)
    assert m2["cycle_length"] == 1 and m2["tail_length"] == 2
    assert m2["etale_cycle"] and m2["volcano_valid"]
    assert m2["volcano_type"] == (1, 2)
    assert m2["volcano_depth_checked"] == 2
    dbl5 = build(F5, f=rf(F5, [0, 2]))
    m1 = morphism_graph_classify(dbl5, pt(F5, 1))
    assert m1["cycle_length"] == 4 and m1["etale_cycle"]
    assert m1["finite_complete_criterion"]


def test_volcano_levels_grow_into_extension():
    sq5 = build(F5, f=rf(F5, [0, 0, 1]))
    m3 = morphism_graph_classify(sq5, pt(F5, 2), depth=3)
    assert m3["volcano_valid"] and m3["volcano_depth_checked"] == 3
    assert [len(lv) for lv in m3["levels"]] == [1, 1, 2, 4]


def test_exceptional_sets():
    assert [str(p) for p in exceptional_set_morphism(rf(Q, [0, 0, 1]), Q)] == \
        ["[0:1]", "[1:0]"]
    assert [str(p) for p in exceptional_set_morphism(rf(Q, [-1, 0, 1]), Q)] == \
        ["[1:0]"]
    assert [str(p) for p in exceptional_set_morphism(rf(Q, [0, 0, 0, 1]), Q)] == \
        ["[0:1]", "[1:0]"]
    assert [str(p) for p in exceptional_set_morphism(rf(F5, [0, 0, 1]), F5)] == \
        ["[0:1]", "[1:0]"]
    # the Newton map for x^2+1 has exceptional points +-i, invisible over Q
    # but rational mod 13
    F13 = make_prime_field(13)
    assert len(exceptional_set_morphism(rf(F13, [-1, 0, 1], [0, 2]), F13)) == 2


def test_backward_kernels():
    cusp = cusp_divisor()
    assert cusp.bidegree == (3, 2)
    for c in (cusp, doubling_map(), square_map()):
        K = backward_kernel_search(c, max_size=40)
        assert [str(p) for p in K] == ["[0:1]", "[1:0]"]
    bc = backward_closure(cusp, pt(Q, 0))
    assert bc.certified


def test_report_serialization():
    sq = square_map()
    j1 = report_to_json(complete_set_search(sq, pt(Q, 0)))
    j2 = report_to_json(complete_set_search(sq, pt(Q, 0)))
    assert j1 == j2
    dot = report_to_dot(complete_set_search(sq, pt(Q, 0)))
    assert '"[0:1]" -> "[0:1]" [label="1,2"]' in dot


def test_adjacency_additivity():
    sq5 = build(F5, f=rf(F5, [0, 0, 1]))
    dbl5 = build(F5, f=rf(F5, [0, 2]))
    S = [pt(F5, a) for a in (1, 2, 3, 4)]
    A1 = adjacency_matrix(sq5, S)
    A2 = adjacency_matrix(dbl5, S)
    A12 = adjacency_matrix(corr_sum(sq5, dbl5), S)
    assert (A1 + A2).entries == A12.entries
