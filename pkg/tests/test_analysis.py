"""Analysis layer: degree-gap bounds, core search, global finitary verdicts,
heights on cycles."""

import math
from fractions import Fraction

import pytest

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

from _helpers import (
    F5,
    Q,
    cusp_divisor,
    doubling_map,
    inf,
    negation_map,
    pt,
    reciprocal_divisor,
    rf,
    square_map,
)


def test_unbalanced_bound():
    assert unbalanced_bound(square_map()) == Fraction(2)
    cusp = cusp_divisor()
    assert unbalanced_bound(cusp) == Fraction(8)
    assert unbalanced_bound(cusp, genus=0) == Fraction(4)
    with pytest.raises(Balanced):
        unbalanced_bound(doubling_map())


def test_core_search_polynomial():
    assert core_search(negation_map(), "polynomial", 2) == rf(Q, [0, 0, 1])
    assert core_search(square_map(), "polynomial", 6) is None


def test_core_search_pole_support():
    h = core_search(reciprocal_divisor(), "pole_support", 1,
                    support=[pt(Q, 0), inf(Q)])
    assert h == rf(Q, [1, 0, 1], [0, 1])


def test_core_search_twisted():
    tw = core_search(doubling_map(), "twisted", 1)
    assert len(tw) == 1
    lam, h = tw[0]
    assert lam == Q.element(Fraction(1, 2))
    assert h == rf(Q, [0, 1])
    tw_neg = core_search(negation_map(), "twisted", 2)
    assert any(l == Q.one and hh == rf(Q, [0, 0, 1]) for l, hh in tw_neg)


def test_finitary_verdict_unbalanced():
    v = finitary_verdict(square_map())
    assert v.status == FinitaryVerdict.CERTIFIED_NON_FINITARY
    assert v.reason == "unbalanced" and v.bound == Fraction(2)


def test_finitary_verdict_finite_order_automorphism():
    v = finitary_verdict(negation_map())
    assert v.status == FinitaryVerdict.CERTIFIED_FINITARY
    assert v.automorphism_order == 2
    v5 = finitary_verdict(corr.build(F5, f=rf(F5, [0, 2])))
    assert v5.status == FinitaryVerdict.CERTIFIED_FINITARY
    assert v5.automorphism_order == 4


def test_finitary_verdict_escaping_orbit():
    v = finitary_verdict(doubling_map())
    assert v.status == FinitaryVerdict.EVIDENCE
    assert v.direction == "non-finitary"
    assert "orbit" in v.artifacts


def test_finitary_verdict_core_route():
    v = finitary_verdict(reciprocal_divisor())
    assert v.status == FinitaryVerdict.CERTIFIED_FINITARY
    assert v.core is not None


def test_pakovich_bound():
    pb = pakovich_bound(0, 1)
    assert pb["bound"] == Fraction(2) and pb["equality_possible"]
    pb2 = pakovich_bound(2, 3)
    assert pb2["bound"] == Fraction(4) and not pb2["equality_possible"]
    with pytest.raises(NonPositiveDegree):
        pakovich_bound(0, 0)
    with pytest.raises(ValueError):
        pakovich_bound(-1, 2)


def test_naive_height():
    hv, ab = naive_height(pt(Q, Fraction(2, 3)))
    assert abs(hv - math.log(3)) < 1e-12 and ab == (2, 3)
    hv0, ab0 = naive_height(inf(Q))
    assert hv0 == 0.0 and ab0 == (1, 0)
    hv1, ab1 = naive_height(pt(Q, Fraction(4, 6)))
    assert abs(hv1 - math.log(3)) < 1e-12 and ab1 == (2, 3)
    hneg, abneg = naive_height(pt(Q, -7))
    assert abs(hneg - math.log(7)) < 1e-12 and abneg == (-7, 1)
    with pytest.raises(WrongField):
        naive_height(pt(F5, 2))


def test_cycle_height_check():
    sq = square_map()
    rep = complete_set_search(sq, pt(Q, 0))
    assert rep.certified
    res = cycle_height_check(sq, rep)
    assert res["ok"]
    assert len(res["cycle_vertices"]) == 1
    assert all(h <= res["bound"] + 1e-9 for h in res["heights"].values())
    with pytest.raises(Balanced):
        cycle_height_check(doubling_map(), rep)
    with pytest.raises(ValueError) as exc:
        cycle_height_check(cusp_divisor(), rep)
    assert "transpose" in str(exc.value)
