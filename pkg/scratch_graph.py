import random

from corrdyn.corr import build, transpose
from corrdyn.fields import make_prime_field, rationals
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
from corrdyn.points import ProjectivePoint
from corrdyn.poly import Poly, RationalFunction

Q = rationals()
F5 = make_prime_field(5)


def rf(field, num_coeffs, den_coeffs=(1,)):
    return RationalFunction(Poly(field, list(num_coeffs)), Poly(field, list(den_coeffs)))


# --- complete_set_search over Q, D_{x^2} ---
sq_Q = build(Q, f=rf(Q, [0, 0, 1]))
rep0 = complete_set_search(sq_Q, ProjectivePoint.finite(Q, 0))
print("seed 0:", rep0.status, [str(v) for v in rep0.vertices],
      [(str(e.source), str(e.target), e.e1, e.e2) for e in rep0.edges])
assert rep0.certified and len(rep0.vertices) == 1
assert rep0.edges[0].e1 == 1 and rep0.edges[0].e2 == 2

repi = complete_set_search(sq_Q, ProjectivePoint.infinity(Q))
print("seed inf:", repi.status, [str(v) for v in repi.vertices])
assert repi.certified and repi.vertices[0].is_infinity

rep2 = complete_set_search(sq_Q, ProjectivePoint.finite(Q, 2), max_size=12)
print("seed 2:", rep2.status, len(rep2.vertices))
assert not rep2.certified

# classify {0}
cls0 = rep0.classification
print("classify {0}:", cls0.as_dict())
assert cls0.ram_increasing and not cls0.equiramified and not cls0.consistently_ramified

# D_{2x} on {0, inf}: etale
dbl_Q = build(Q, f=rf(Q, [0, 2]))
cls = classify_set(dbl_Q, [ProjectivePoint.finite(Q, 0), ProjectivePoint.infinity(Q)])
print("2x {0,inf}:", cls.as_dict())
assert cls.etale and cls.consistently_ramified

# D_{x^3} on {inf}
cub_Q = build(Q, f=rf(Q, [0, 0, 0, 1]))
cls3 = classify_set(cub_Q, [ProjectivePoint.infinity(Q)])
print("x^3 {inf}:", cls3.as_dict())
assert not cls3.equiramified

# --- path counts over F5 ---
sq_5 = build(F5, f=rf(F5, [0, 0, 1]))
S = [ProjectivePoint.finite(F5, a) for a in (1, 2, 3, 4)]
A = adjacency_matrix(sq_5, S)
print("A:", A.entries, [str(v) for v in A.vertices])
np_xx0 = path_count(sq_5, S, S[1], S[1], 0)
np212 = path_count(sq_5, S, S[1], S[0], 2)
print("np_{2,2,0} =", np_xx0, " np_{2,1,2} =", np212)
assert np_xx0 == 1 and np212 == 1

# --- enumeration over F5, K=1 ---
reps = enumerate_complete_sets(sq_5, 1)
summary = [(frozenset(str(v) for v in r.vertices), r.status) for r in reps]
print("enumerate x^2 K=1:", summary)
assert len(reps) == 3
verts = {fs: st for fs, st in summary}
assert verts[frozenset({"[0:1]"})] == "Certified"
assert verts[frozenset({"[1:0]"})] == "Certified"
assert verts[frozenset({"[1:1]", "[2:1]", "[3:1]", "[4:1]"})] == "BudgetExceeded"

dbl_5 = build(F5, f=rf(F5, [0, 2]))
reps2 = enumerate_complete_sets(dbl_5, 1)
summary2 = [(frozenset(str(v) for v in r.vertices), r.status) for r in reps2]
print("enumerate 2x K=1:", summary2)
assert len(reps2) == 3 and all(st == "Certified" for _, st in summary2)

assert enumerate_complete_sets(sq_5, 0) == []

# frozen counts: number of discovered components for K = 1, 2, 3
for corr, want in ((sq_5, [3, 4, 10]), (dbl_5, [3, 8, 38])):
    got = [len(enumerate_complete_sets(corr, K)) for K in (1, 2, 3)]
    print("component counts:", got, "want", want)
    assert got == want

# --- morphism graph structure ---
m0 = morphism_graph_classify(sq_5, ProjectivePoint.finite(F5, 0))
print("x^2 seed 0:", {k: v for k, v in m0.items() if k != "levels"})
assert m0["cycle_length"] == 1 and m0["cycle_totally_ramified"]
assert m0["finite_complete_criterion"] and not m0["etale_cycle"]

m2 = morphism_graph_classify(sq_5, ProjectivePoint.finite(F5, 2), depth=2)
print("x^2 seed 2:", {k: ([[str(p) for p in lv] for lv in v] if k == "levels" else v)
                      for k, v in m2.items() if k != "cycle"})
assert m2["cycle_length"] == 1 and m2["tail_length"] == 2
assert m2["etale_cycle"] and m2["volcano_valid"] and m2["volcano_type"] == (1, 2)
assert m2["volcano_depth_checked"] == 2

m1 = morphism_graph_classify(dbl_5, ProjectivePoint.finite(F5, 1))
print("2x seed 1:", {k: v for k, v in m1.items() if k != "levels"})
assert m1["cycle_length"] == 4 and m1["etale_cycle"] and m1["finite_complete_criterion"]

# deeper volcano: x^2 seed 2 depth 3 must grow the ambient to F25
m3 = morphism_graph_classify(sq_5, ProjectivePoint.finite(F5, 2), depth=3)
print("x^2 seed 2 depth 3: valid", m3["volcano_valid"], "checked",
      m3["volcano_depth_checked"], "level sizes", [len(lv) for lv in m3["levels"]])
assert m3["volcano_valid"] and m3["volcano_depth_checked"] == 3
assert [len(lv) for lv in m3["levels"]] == [1, 1, 2, 4]

# --- exceptional sets ---
E1 = exceptional_set_morphism(rf(Q, [0, 0, 1]), Q)
print("E(x^2) =", [str(p) for p in E1])
assert [str(p) for p in E1] == ["[0:1]", "[1:0]"]

E2 = exceptional_set_morphism(rf(Q, [-1, 0, 1]), Q)
print("E(x^2-1) =", [str(p) for p in E2])
assert [str(p) for p in E2] == ["[1:0]"]

E3 = exceptional_set_morphism(rf(Q, [0, 0, 0, 1]), Q)
print("E(x^3) =", [str(p) for p in E3])
assert [str(p) for p in E3] == ["[0:1]", "[1:0]"]

E4 = exceptional_set_morphism(rf(F5, [0, 0, 1]), F5)
print("E(x^2/F5) =", [str(p) for p in E4])
assert [str(p) for p in E4] == ["[0:1]", "[1:0]"]

# Newton-type map (x^2-1)/(2x): exceptional points are quadratic over Q,
# so the rational report is empty, but over F5 they are visible when -1
# is a square... over F7 instead: -1 is not a square mod 7 -> degree 2.
E5 = exceptional_set_morphism(rf(Q, [-1, 0, 1], [0, 2]), Q)
print("E((x^2-1)/2x over Q) =", [str(p) for p in E5])
F13 = make_prime_field(13)
E6 = exceptional_set_morphism(rf(F13, [-1, 0, 1], [0, 2]), F13)
print("E((x^2-1)/2x over F13) =", [str(p) for p in E6])
assert len(E6) == 2  # roots of x^2+1 = {5, 8} mod 13

# --- backward kernels ---
cusp = build(Q, F=__import__("corrdyn.poly", fromlist=["BiPoly"]).BiPoly(
    Q, {(2, 0): Q.element(1), (0, 3): Q.element(-1)}))
print("cusp bidegree:", cusp.bidegree)
K1 = backward_kernel_search(cusp, max_size=40)
print("K_backward(x^2 - y^3) =", [str(p) for p in K1])
assert [str(p) for p in K1] == ["[0:1]", "[1:0]"]

K2 = backward_kernel_search(dbl_Q, max_size=40)
print("K_backward(2x/Q) =", [str(p) for p in K2])
assert [str(p) for p in K2] == ["[0:1]", "[1:0]"]

K3 = backward_kernel_search(sq_Q, max_size=40)
print("K_backward(x^2/Q) =", [str(p) for p in K3])
assert [str(p) for p in K3] == ["[0:1]", "[1:0]"]

# backward closure of 0 for x^2 - y^3 correspondence
bc = backward_closure(cusp, ProjectivePoint.finite(Q, 0))
print("backward closure 0:", bc.status, [str(v) for v in bc.vertices])
assert bc.certified

# --- serialization determinism ---
j1 = report_to_json(rep0)
j2 = report_to_json(complete_set_search(sq_Q, ProjectivePoint.finite(Q, 0)))
assert j1 == j2
print("json:", j1)
dot = report_to_dot(rep0)
print(dot)
assert '"[0:1]" -> "[0:1]" [label="1,2"]' in dot

# --- transpose sanity: backward kernel of the transpose = forward version ---
tsq = transpose(sq_Q)
print("transpose bidegree:", tsq.bidegree)

# adjacency additivity
ssum = __import__("corrdyn.corr", fromlist=["corr_sum"]).corr_sum(sq_5, dbl_5)
A1 = adjacency_matrix(sq_5, S)
A2 = adjacency_matrix(dbl_5, S)
A12 = adjacency_matrix(ssum, S)
assert (A1 + A2).entries == A12.entries
print("adjacency additivity OK")

print("ALL GRAPH SMOKE TESTS PASSED")
