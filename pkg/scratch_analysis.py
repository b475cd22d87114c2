import random
from fractions import Fraction

from corrdyn.fields import rationals, make_prime_field
from corrdyn.poly import BiPoly, Poly, RationalFunction
from corrdyn.points import ProjectivePoint
from corrdyn import corr
from corrdyn.analysis import (
    FinitaryVerdict,
    core_search,
    cycle_height_check,
    finitary_verdict,
    naive_height,
    pakovich_bound,
    unbalanced_bound,
)
from corrdyn.errors import Balanced, NonPositiveDegree, WrongField
from corrdyn.graph import complete_set_search

Q = rationals()
F5 = make_prime_field(5)


def rf(field, num, den=None):
    n = Poly(field, num)
    d = Poly.one(field) if den is None else Poly(field, den)
    return RationalFunction(n, d)


def pt(field, v):
    return ProjectivePoint.finite(field, field.element(v))


def inf(field):
    return ProjectivePoint.infinity(field)


def check(cond, label):
    if not cond:
        raise SystemExit(f"FAIL: {label}")
    print(f"ok: {label}")


# --- unbalanced_bound ---
c_sq = corr.build(Q, f=rf(Q, [0, 0, 1]))          # graph of x^2
b = unbalanced_bound(c_sq)
check(b == Fraction(2), f"unbalanced_bound(x^2 graph) = {b}")

F_cusp = BiPoly.from_poly(Poly(Q, [0, 0, 1]), "x") - BiPoly.from_poly(
    Poly(Q, [0, 0, 0, 1]), "y")                    # x^2 - y^3
c_cusp = corr.build(Q, F=F_cusp)
b2 = unbalanced_bound(c_cusp)
check(b2 == Fraction(8), f"unbalanced_bound(x^2 - y^3) = {b2}")
b2g = unbalanced_bound(c_cusp, genus=0)
check(b2g == Fraction(4), f"genus-0 override = {b2g}")

c_2x = corr.build(Q, f=rf(Q, [0, 2]))
try:
    unbalanced_bound(c_2x)
    check(False, "Balanced not raised")
except Balanced:
    check(True, "Balanced raised for equal degrees")

# --- core_search: polynomial ---
c_neg = corr.build(Q, f=rf(Q, [0, -1]))            # graph of -x
h = core_search(c_neg, "polynomial", 2)
check(h == rf(Q, [0, 0, 1]), f"core of -x graph: {h}")

h_none = core_search(c_sq, "polynomial", 6)
check(h_none is None, "x^2 graph has no polynomial core up to degree 6")

# --- core_search: pole_support ---
F_inv = BiPoly(Q, {(1, 1): Q.one, (0, 0): -Q.one})  # xy - 1
c_inv = corr.build(Q, F=F_inv)
h_inv = core_search(c_inv, "pole_support", 1, support=[pt(Q, 0), inf(Q)])
check(h_inv == rf(Q, [1, 0, 1], [0, 1]), f"core of xy - 1: {h_inv}")

# --- core_search: twisted ---
tw = core_search(c_2x, "twisted", 1)
check(len(tw) == 1, f"one twisted pair: {tw}")
lam, h_tw = tw[0]
check(lam == Q.element(Fraction(1, 2)), f"lambda = {lam}")
check(h_tw == rf(Q, [0, 1]), f"twisted core = {h_tw}")

# untwisted core is also a twisted pair with lambda 1
tw_neg = core_search(c_neg, "twisted", 2)
check(any(l == Q.one and hh == rf(Q, [0, 0, 1]) for l, hh in tw_neg),
      f"(1, x^2) among twisted pairs of -x graph: {tw_neg}")

# --- finitary_verdict ---
v1 = finitary_verdict(c_sq)
check(v1.status == FinitaryVerdict.CERTIFIED_NON_FINITARY
      and v1.reason == "unbalanced" and v1.bound == Fraction(2),
      f"x^2 graph verdict: {v1} bound={v1.bound}")

v2 = finitary_verdict(c_neg)
check(v2.status == FinitaryVerdict.CERTIFIED_FINITARY
      and v2.automorphism_order == 2,
      f"-x graph verdict: {v2} order={v2.automorphism_order}")

v3 = finitary_verdict(c_2x)
check(v3.status == FinitaryVerdict.EVIDENCE and v3.direction == "non-finitary",
      f"2x graph verdict: {v3}")
check("orbit" in v3.artifacts, f"orbit artifact present: {v3.artifacts}")

c_2x5 = corr.build(F5, f=rf(F5, [0, 2]))
v4 = finitary_verdict(c_2x5)
check(v4.status == FinitaryVerdict.CERTIFIED_FINITARY
      and v4.automorphism_order == 4,
      f"2x over F5 verdict: {v4} order={v4.automorphism_order}")

# core route: xy - 1 is an involution (degree-1 morphism? no: F-built).
v5 = finitary_verdict(c_inv)
check(v5.status == FinitaryVerdict.CERTIFIED_FINITARY and v5.core is not None,
      f"xy - 1 verdict: {v5} core={v5.core}")

# --- pakovich_bound ---
pb = pakovich_bound(0, 1)
check(pb["bound"] == Fraction(2) and pb["equality_possible"],
      f"pakovich(0, 1) = {pb['bound']}, equality flagged")
pb2 = pakovich_bound(2, 3)
check(pb2["bound"] == Fraction(4) and not pb2["equality_possible"],
      f"pakovich(2, 3) = {pb2['bound']}")
try:
    pakovich_bound(0, 0)
    check(False, "NonPositiveDegree not raised")
except NonPositiveDegree:
    check(True, "NonPositiveDegree raised for d = 0")
try:
    pakovich_bound(-1, 2)
    check(False, "ValueError not raised")
except ValueError:
    check(True, "ValueError raised for negative genus")

# --- naive_height ---
import math
hv, ab = naive_height(pt(Q, Fraction(2, 3)))
check(abs(hv - math.log(3)) < 1e-12 and ab == (2, 3),
      f"height(2/3) = {hv}, pair {ab}")
hv0, ab0 = naive_height(inf(Q))
check(hv0 == 0.0 and ab0 == (1, 0), "height(inf) = 0")
hv1, ab1 = naive_height(pt(Q, Fraction(4, 6)))
check(abs(hv1 - math.log(3)) < 1e-12 and ab1 == (2, 3), "height reduces 4/6")
hneg, abneg = naive_height(pt(Q, -7))
check(abs(hneg - math.log(7)) < 1e-12 and abneg == (-7, 1), "height(-7)")
try:
    naive_height(pt(F5, 2))
    check(False, "WrongField not raised")
except WrongField:
    check(True, "WrongField raised over F5")

# --- cycle_height_check ---
rep = complete_set_search(c_sq, pt(Q, 0))
check(rep.certified, f"closure of 0 under x^2 certified: {list(rep.vertices)}")
res = cycle_height_check(c_sq, rep)
check(res["ok"], f"cycle height check ok, bound {res['bound']}")
check(len(res["cycle_vertices"]) == 1, f"one cycle vertex: {res['cycle_vertices']}")
check(all(hh <= res["bound"] + 1e-9 for hh in res["heights"].values()),
      f"cycle heights {res['heights']}")

try:
    cycle_height_check(c_2x, rep)
    check(False, "Balanced not raised in cycle check")
except Balanced:
    check(True, "Balanced raised in cycle check")

try:
    cycle_height_check(c_cusp, rep)
    check(False, "orientation error not raised")
except ValueError as exc:
    check("transpose" in str(exc), f"orientation error: {exc}")

print("ALL ANALYSIS SMOKE TESTS PASSED")
