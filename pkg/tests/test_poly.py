"""Polynomial layer: univariate and bivariate arithmetic, resultants,
factorization, projective roots, rational functions."""

import random
from fractions import Fraction

import pytest

from corrdyn.errors import ZeroPolynomial
from corrdyn.fields import make_extension, make_prime_field
from corrdyn.points import ProjectivePoint
from corrdyn.poly import (
    BinaryForm,
    BiPoly,
    BiRing,
    FieldRing,
    Poly,
    RationalFunction,
    bipoly_gcd,
    bipoly_squarefree,
    embed_poly,
    embedding,
    exact_degree_over,
    factor_fq,
    poly_squarefree,
    rational_factor_degrees,
    resultant_lists,
    roots_in_field,
    roots_p1,
    sylvester_resultant,
)

from _helpers import F2, F5, Q, pt, inf

F25 = make_extension(F5, 2)


def test_poly_basics():
    f = Poly(Q, [1, 0, 1])
    g = Poly(Q, [-1, 1])
    assert str(f * g) == "x^3-x^2+x-1"
    q, r = (f * g).divmod(f)
    assert q == g and r.is_zero
    assert f.eval(Q.element(2)) == Q.element(5)
    assert f.compose(g) == Poly(Q, [2, -2, 1])
    assert (f * f * g).gcd(f * g) == (f * g).monic()[1]
    assert str(Poly(Q, [Fraction(1, 2), 1])) == "x+1/2"


def test_root_multiplicity():
    t = Poly(Q, [-1, 1]) ** 3 * Poly(Q, [2, 1])
    assert t.root_multiplicity(Q.element(1)) == 3
    assert t.root_multiplicity(Q.element(-2)) == 1
    assert t.root_multiplicity(Q.element(7)) == 0


def test_resultant_prs_matches_sylvester():
    rng = random.Random(42)
    ringQ = FieldRing(Q)
    for _ in range(40):
        da, db = rng.randrange(1, 5), rng.randrange(1, 5)
        A = [Q.element(Fraction(rng.randrange(-6, 7), rng.randrange(1, 4)))
             for _ in range(da + 1)]
        B = [Q.element(Fraction(rng.randrange(-6, 7), rng.randrange(1, 4)))
             for _ in range(db + 1)]
        assert resultant_lists(A, B, ringQ) == sylvester_resultant(A, B, ringQ)
    ring5 = FieldRing(F5)
    for _ in range(60):
        da, db = rng.randrange(1, 6), rng.randrange(1, 6)
        A = [F5.element(rng.randrange(5)) for _ in range(da + 1)]
        B = [F5.element(rng.randrange(5)) for _ in range(db + 1)]
        assert resultant_lists(A, B, ring5) == sylvester_resultant(A, B, ring5)


def test_resultant_values():
    ringQ = FieldRing(Q)
    # Res(x-3, x-5) = g(3) = -2 with the product-over-roots convention
    a, b = Q.element(3), Q.element(5)
    assert resultant_lists([-a, Q.one], [-b, Q.one], ringQ) == Q.element(-2)
    # common root kills the resultant
    assert resultant_lists([Q.element(-1), Q.zero, Q.one],
                           [Q.element(-1), Q.one], ringQ).is_zero


def test_resultant_eliminates_middle_variable():
    # Res_y(y - x^2, z - y^3) = z - x^6 up to sign
    ringB = BiRing(Q)
    x = BiPoly.var_x(Q)
    z = BiPoly.var_y(Q)
    one = BiPoly.one(Q)
    Fc = [-(x * x), one]
    Gc = [z, BiPoly.zero(Q), BiPoly.zero(Q), -one]
    res = resultant_lists(Fc, Gc, ringB)
    assert res == (z - x ** 6) or res == -(z - x ** 6)


def test_bipoly_exact_div_and_eval():
    x = BiPoly.var_x(Q)
    y = BiPoly.var_y(Q)
    one = BiPoly.one(Q)
    P1 = x * x - y
    P2 = x + y
    prod = P1 * P2
    assert prod.exact_div(P2) == P1
    assert prod.exact_div(P1) == P2
    with pytest.raises(Exception):
        (prod + one).exact_div(P2)
    assert prod.eval_x(Q.element(2)) == Poly(Q, [8, 2, -1])
    assert P1.swap() == BiPoly(Q, {(0, 2): 1, (1, 0): -1})


def test_bipoly_gcd():
    x = BiPoly.var_x(Q)
    y = BiPoly.var_y(Q)
    one = BiPoly.one(Q)
    assert bipoly_gcd((x - y) * (x + y) ** 2,
                      (x + y) * (x * x + one)) == (x + y)


def test_squarefree_decomposition_q():
    x = BiPoly.var_x(Q)
    y = BiPoly.var_y(Q)
    sq = (x - y) ** 2 * (x + y)
    u, facs = bipoly_squarefree(sq)
    assert u == Q.one
    assert facs == [((x + y).normalized()[1], 1),
                    ((x - y).normalized()[1], 2)]
    acc = BiPoly.constant(Q, u)
    for g, m in facs:
        acc = acc * g ** m
    assert acc == sq


def test_squarefree_char_p():
    # (x^2+1)^2 (x+1) over F2 collapses to (x+1)^5
    xp = Poly.x(F2)
    u, facs = poly_squarefree((xp * xp + 1) ** 2 * (xp + 1))
    assert facs == [(xp + 1, 5)]
    # bivariate with a pure p-th power factor
    x2 = BiPoly.var_x(F2)
    w2 = BiPoly.var_y(F2)
    trap = (x2 * x2 * w2 + 1) ** 2 * (w2 + x2)
    u, facs = bipoly_squarefree(trap)
    acc = BiPoly.constant(F2, u)
    for g, m in facs:
        acc = acc * g ** m
    assert acc == trap
    assert sorted(m for _, m in facs) == [1, 2]
    u, facs = bipoly_squarefree((x2 + w2) ** 2)
    assert facs == [((x2 + w2), 2)]
    # derivative wrt y vanishes but the curve is separable in x
    insep = w2 * w2 + x2
    u, facs = bipoly_squarefree(insep)
    assert facs == [(insep.normalized()[1], 1)]


def test_factor_fq():
    x5 = Poly.x(F5)
    poly5 = (x5 ** 2 + 2) * (x5 + 1) ** 2 * (x5 ** 2 + x5 + 1)
    u, facs = factor_fq(poly5)
    acc = Poly.constant(F5, u)
    for g, m in facs:
        acc = acc * g ** m
    assert acc == poly5
    # -2 is not a square mod 5, so x^2+2 stays irreducible
    assert any(g == x5 ** 2 + 2 and m == 1 for g, m in facs)
    # factorization is deterministic for a fixed rng
    assert factor_fq(poly5, random.Random(99))[1] == facs


def test_factor_frobenius_product():
    # x^25 - x factors into every monic irreducible of degree 1 and 2
    x5 = Poly.x(F5)
    frob = x5 ** 25 - x5
    _u, facs = factor_fq(frob)
    degs = {}
    for g, m in facs:
        assert m == 1
        degs[g.degree] = degs.get(g.degree, 0) + 1
    assert degs == {1: 5, 2: 10}


def test_roots_in_field():
    x5 = Poly.x(F5)
    rts = roots_in_field((x5 - 1) ** 2 * (x5 - 3))
    assert [(str(r), m) for r, m in rts] == [("1", 2), ("3", 1)]


def test_rational_factor_degrees():
    roots, resid = rational_factor_degrees(Poly(Q, [2, 0, 0, 0, 0, 0, -2]))
    assert sorted(str(r) for r, _m in roots) == ["-1", "1"]
    assert resid == [2, 2]
    fr = Poly(Q, [Fraction(-1, 2), 1])
    roots, resid = rational_factor_degrees(fr * fr)
    assert [(str(r), m) for r, m in roots] == [("1/2", 2)]
    assert resid == []


def test_embeddings_are_ring_maps():
    emb = embedding(F5, F25)
    assert emb(F5.element(3)) == F25.element(3)
    rts = roots_in_field(embed_poly(Poly(F5, [2, 0, 1]), F25))
    assert len(rts) == 2
    r0 = rts[0][0]
    assert r0 * r0 == F25.element(-2)
    assert exact_degree_over(r0, 1) == 2
    assert exact_degree_over(F25.element(3), 1) == 1
    F625 = make_extension(F5, 4)
    emb2 = embedding(F25, F625)
    a25 = F25.generator()
    img = emb2(a25)
    assert img * img == F625.element(-2)
    b25 = F25.element([1, 3])
    assert emb2(a25 * b25 + 3) == img * emb2(b25) + F625.element(3)


def test_roots_p1():
    form = BinaryForm(Q, [-1, 0, 1], 3)
    assert form.infinity_multiplicity() == 1
    rts, resid = roots_p1(form)
    assert sorted(str(p) for p, _m in rts) == ["[-1:1]", "[1:0]", "[1:1]"]
    assert resid == []
    with pytest.raises(ZeroPolynomial):
        roots_p1(BinaryForm(Q, [], 0))


def test_roots_p1_extension_bound():
    x5 = Poly.x(F5)
    form5 = BinaryForm(F5, list((x5 ** 2 + 2).coeffs), 2)
    rts, resid = roots_p1(form5, ext_bound=1)
    assert rts == [] and resid == [2]
    rts, resid = roots_p1(form5, ext_bound=2)
    assert resid == [] and len(rts) == 2
    assert all(p.field.k == 2 for p, _m in rts)


def test_binary_form_multiplicity():
    form2 = BinaryForm(Q, [0, 0, 1], 5)
    assert form2.multiplicity_at(pt(Q, 0)) == 2
    assert form2.multiplicity_at(inf(Q)) == 3
    assert form2.multiplicity_at(pt(Q, 4)) == 0


def test_rational_function_normalization_and_eval():
    f = RationalFunction(Poly(Q, [0, 2]), Poly(Q, [2, 2]))
    assert str(f) == "x/(x+1)"
    assert f.eval_affine(Q.element(1)) == Q.element(Fraction(1, 2))
    assert f.eval_affine(Q.element(-1)) is None
    assert f.eval_point(inf(Q)) == pt(Q, 1)
    assert f.eval_point(pt(Q, -1)).is_infinity
    assert f.order_at(pt(Q, 0)) == 1
    assert f.order_at(pt(Q, -1)) == -1
    assert f.order_at(inf(Q)) == 0


def test_rational_function_algebra():
    f = RationalFunction(Poly(Q, [0, 2]), Poly(Q, [2, 2]))
    invx = RationalFunction(Poly.one(Q), Poly.x(Q))
    sq = RationalFunction.x(Q) * RationalFunction.x(Q)
    assert sq.compose(invx) == RationalFunction(Poly.one(Q), Poly(Q, [0, 0, 1]))
    assert invx.compose(sq) == sq.compose(invx)
    assert f + invx == RationalFunction(Poly(Q, [1, 1, 1]), Poly(Q, [0, 1, 1]))
    assert f * invx == RationalFunction(Poly.one(Q), Poly(Q, [1, 1]))
    assert (f / f) == RationalFunction.constant(Q, 1)
    assert (f - f).is_zero
    assert f ** 2 == f * f
    assert f ** (-1) == RationalFunction(Poly(Q, [1, 1]), Poly(Q, [0, 1]))
    p2 = RationalFunction.from_poly(Poly(Q, [1, 0, 1]))
    assert p2.order_at(inf(Q)) == -2
    assert p2.eval_point(inf(Q)).is_infinity
    assert f.degree == 1 and p2.degree == 2
