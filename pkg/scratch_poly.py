import random
from fractions import Fraction

from corrdyn.fields import rationals, make_prime_field, make_extension
from corrdyn.poly import (
    Poly, BiPoly, FieldRing, PolyRing, BiRing,
    pseudo_rem, resultant_lists, sylvester_resultant,
    bipoly_gcd, bipoly_squarefree, poly_squarefree,
    factor_fq, roots_in_field, rational_factor_degrees,
    embedding, embed_poly, exact_degree_over,
    BinaryForm, roots_p1, RationalFunction, _extension_of,
)
from corrdyn.points import ProjectivePoint

Q = rationals()
F5 = make_prime_field(5)
F2 = make_prime_field(2)
F25 = make_extension(F5, 2)

# --- Poly basics
f = Poly(Q, [Fraction(1), Fraction(0), Fraction(1)])   # x^2+1
g = Poly(Q, [-1, 1])                                   # x-1
assert str(f * g) == "x^3-x^2+x-1", str(f * g)
q, r = (f * g).divmod(f)
assert q == g and r.is_zero
assert f.eval(Q.element(2)) == Q.element(5)
assert f.compose(g) == Poly(Q, [2, -2, 1])
assert (f * f * g).gcd(f * g) == (f * g).monic()[1]
h = Poly(Q, [Fraction(1, 2), 1])
assert str(h) == "x+1/2", str(h)

# root multiplicity
t = Poly(Q, [-1, 1]) ** 3 * Poly(Q, [2, 1])
assert t.root_multiplicity(Q.element(1)) == 3
assert t.root_multiplicity(Q.element(-2)) == 1
assert t.root_multiplicity(Q.element(7)) == 0

# --- resultants: PRS vs Sylvester oracle, random over Q and F5
rng = random.Random(42)
ringQ = FieldRing(Q)
ring5 = FieldRing(F5)
for trial in range(40):
    da, db = rng.randrange(1, 5), rng.randrange(1, 5)
    A = [Q.element(Fraction(rng.randrange(-6, 7), rng.randrange(1, 4))) for _ in range(da + 1)]
    B = [Q.element(Fraction(rng.randrange(-6, 7), rng.randrange(1, 4))) for _ in range(db + 1)]
    r1 = resultant_lists(A, B, ringQ)
    r2 = sylvester_resultant(A, B, ringQ)
    assert r1 == r2, (trial, [str(a) for a in A], [str(b) for b in B], str(r1), str(r2))
for trial in range(60):
    da, db = rng.randrange(1, 6), rng.randrange(1, 6)
    A = [F5.element(rng.randrange(5)) for _ in range(da + 1)]
    B = [F5.element(rng.randrange(5)) for _ in range(db + 1)]
    r1 = resultant_lists(A, B, ring5)
    r2 = sylvester_resultant(A, B, ring5)
    assert r1 == r2, trial

# Res(x-a, x-b) = a-b  (sign convention check: Res_x(x-a, x-b) = b-a or a-b?)
a, b = Q.element(3), Q.element(5)
rr = resultant_lists([-a, Q.one], [-b, Q.one], ringQ)
print("Res(x-3, x-5) =", rr)
# Res(f, g) = prod over roots alpha of f of g(alpha), times lc powers
# f = x-3 root 3, g(3) = 3-5 = -2
assert rr == Q.element(-2)

# common root => 0
A = [Q.element(-1), Q.one]
FF = [Q.element(-1), Q.zero, Q.one]   # x^2-1
assert resultant_lists(FF, A, ringQ).is_zero

# --- PRS over PolyRing: Res_y(F(x,y), G(y,z)) via coefficient lists of Polys
# link form: F = y - x^2 in (x, y), G = z - y^3 in (y, z)
# As polys in y with Poly coefficients: F: [-x^2, 1], G: [z, 0, 0, -1] where
# here "x" stands for first var, "z" also a Poly in one var; do it with BiPoly.
ringB = BiRing(Q)
x = BiPoly.var_x(Q)
z = BiPoly.var_y(Q)        # reuse y-slot as the outer variable
one = BiPoly.one(Q)
Fc = [-(x * x), one]                       # y - x^2, coeffs in y
Gc = [z, BiPoly.zero(Q), BiPoly.zero(Q), -one]   # z - y^3
res = resultant_lists(Fc, Gc, ringB)
print("Res_y(y-x^2, z-y^3) =", res)
assert res == (z - x ** 6) or res == -(z - x ** 6), str(res)

# --- BiPoly arithmetic and exact_div
P1 = x * x - z        # using z as "y"
P2 = x + z
prod = P1 * P2
assert prod.exact_div(P2) == P1
assert prod.exact_div(P1) == P2
try:
    (prod + one).exact_div(P2)
    raise AssertionError("expected inexact division")
except Exception as e:
    assert "inexact" in str(e) or "Zero" in type(e).__name__

# eval and swap
v = prod.eval_x(Q.element(2))
assert v == Poly(Q, [8, 2, -1]), str(v)   # (4-y)(2+y) = 8+2y-y^2
assert P1.swap() == BiPoly(Q, {(0, 2): 1, (1, 0): -1})

# --- bivariate gcd
G1 = (x - z) * (x + z) ** 2
G2 = (x + z) * (x * x + one)
gg = bipoly_gcd(G1, G2)
assert gg == (x + z), str(gg)
# gcd with content
c1 = BiPoly.from_poly(Poly(Q, [1, 1]), "x") * (x - z)    # (x+1)(x-z) wait from_poly gives poly in x
gc = bipoly_gcd(c1 * (x + z), c1 * (x * x + z))
u, gcn = gc.normalized()
assert gc == bipoly_gcd(c1, c1) * one or gc.deg_x >= 1
print("gcd with content:", gc)

# --- squarefree over Q
sq = (x - z) ** 2 * (x + z)
u, facs = bipoly_squarefree(sq)
assert u == Q.one
assert facs == [((x + z).normalized()[1], 1), ((x - z).normalized()[1], 2)], [(str(g), m) for g, m in facs]
# reassemble
acc = BiPoly.constant(Q, u)
for gfac, m in facs:
    acc = acc * gfac ** m
assert acc == sq

# univariate char-p squarefree: f = (x^2+1)^2 * (x+1) over F2
# (x^2+1) = (x+1)^2 over F2, so f = (x+1)^5
xp = Poly.x(F2)
f2 = (xp * xp + 1) ** 2 * (xp + 1)
u, facs = poly_squarefree(f2)
assert facs == [(xp + 1, 5)], [(str(g), m) for g, m in facs]

# char-p bivariate trap: (x^2*w + 1)^2 * (w + x) over F2, w := y
x2 = BiPoly.var_x(F2)
w2 = BiPoly.var_y(F2)
trap = (x2 * x2 * w2 + 1) ** 2 * (w2 + x2)
u, facs = bipoly_squarefree(trap)
got = sorted([(str(g), m) for g, m in facs])
print("char-2 squarefree:", got)
acc = BiPoly.constant(F2, u)
for gfac, m in facs:
    acc = acc * gfac ** m
assert acc == trap
assert sorted(m for _, m in facs) == [1, 2], got

# pure p-th power: (x + w)^2 over F2: both partials vanish
pp = (x2 + w2) ** 2
u, facs = bipoly_squarefree(pp)
assert facs == [((x2 + w2), 2)], [(str(g), m) for g, m in facs]

# inseparable squarefree: y^2 - x over F2 (derivative wrt y vanishes)
insep = w2 * w2 + x2
u, facs = bipoly_squarefree(insep)
assert facs == [(insep.normalized()[1], 1)], [(str(g), m) for g, m in facs]

# --- factor_fq
x5 = Poly.x(F5)
poly5 = (x5 ** 2 + 2) * (x5 + 1) ** 2 * (x5 ** 2 + x5 + 1)
u, facs = factor_fq(poly5)
print("factor over F5:", u, [(str(g), m) for g, m in facs])
acc = Poly.constant(F5, u)
for gfac, m in facs:
    acc = acc * gfac ** m
assert acc == poly5
# determinism
u2, facs2 = factor_fq(poly5, random.Random(99))
assert facs == facs2
# x^2+2 irreducible over F5? squares mod 5: 0,1,4,4,1 -> -2=3 not a square -> yes
assert any(g.degree == 2 and m == 1 and g == x5 ** 2 + 2 for g, m in facs)

# big-ish: x^(25)-x over F5 factors into all linear+quadratic irreducibles
frob = Poly(F5, [F5.zero] * 1 + [F5.element(-1)]) + Poly(F5, [F5.zero] * 25 + [F5.one])
u, facs = factor_fq(frob)
degs = {}
for gfac, m in facs:
    degs[gfac.degree] = degs.get(gfac.degree, 0) + 1
    assert m == 1
assert degs == {1: 5, 2: 10}, degs

# roots_in_field
rts = roots_in_field((x5 - 1) ** 2 * (x5 - 3))
assert [(str(r), m) for r, m in rts] == [("1", 2), ("3", 1)], rts

# --- rational_factor_degrees over Q
fq = Poly(Q, [2, 0, 0, 0, 0, 0, -2])   # 2(x^6 - 1)... wait: -2x^6+2 = -2(x^6-1)
roots, resid = rational_factor_degrees(fq)
print("Q factor:", [(str(r), m) for r, m in roots], resid)
assert sorted(str(r) for r, m in roots) == ["-1", "1"]
assert resid == [2, 2], resid    # x^2+x+1, x^2-x+1

fr = Poly(Q, [Fraction(-1, 2), 1])  # x - 1/2
roots, resid = rational_factor_degrees(fr * fr)
assert [(str(r), m) for r, m in roots] == [("1/2", 2)]

# --- embeddings
emb = embedding(F5, F25)
assert emb(F5.element(3)) == F25.element(3)
f_in_25 = embed_poly(x5 ** 2 + 2, F25)
rts = roots_in_field(f_in_25)
assert len(rts) == 2
r0 = rts[0][0]
assert r0 * r0 == F25.element(-2)
assert exact_degree_over(r0, 1) == 2
assert exact_degree_over(F25.element(3), 1) == 1

# embedding consistency: F25 -> F_{5^4}
F625 = make_extension(F5, 4)
emb2 = embedding(F25, F625)
a25 = F25.generator()
img = emb2(a25)
assert img * img == F625.element(-2)   # modulus t^2+2 -> root of same
# ring hom on a sample
b25 = F25.element([1, 3])
assert emb2(a25 * b25 + 3) == img * emb2(b25) + F625.element(3)

# --- BinaryForm / roots_p1
# form for x^2 - 1 fiber: (u^2 - 1) as degree-3 form: coeffs [ -1, 0, 1, 0 ]
form = BinaryForm(Q, [-1, 0, 1], 3)
assert form.infinity_multiplicity() == 1
rts, resid = roots_p1(form)
names = sorted(str(p) for p, m in rts)
print("roots of deg-3 form:", names, resid)
assert names == ["[-1:1]", "[1:0]", "[1:1]"]
assert resid == []

# over F5 with extension bound
form5 = BinaryForm(F5, list((x5 ** 2 + 2).coeffs), 2)
rts, resid = roots_p1(form5, ext_bound=1)
assert rts == [] and resid == [2], (rts, resid)
rts, resid = roots_p1(form5, ext_bound=2)
assert resid == [] and len(rts) == 2
assert all(p.field.k == 2 for p, m in rts)

# multiplicity_at
form2 = BinaryForm(Q, [0, 0, 1], 5)   # u^2 * (inf)^3
assert form2.multiplicity_at(ProjectivePoint.finite(Q, Q.zero)) == 2
assert form2.multiplicity_at(ProjectivePoint.infinity(Q)) == 3
assert form2.multiplicity_at(ProjectivePoint.finite(Q, Q.element(4))) == 0

# --- RationalFunction
rf = RationalFunction(Poly(Q, [0, 2]), Poly(Q, [2, 2]))   # 2x/(2x+2) -> x/(x+1)
assert str(rf) == "x/(x+1)", str(rf)
assert rf.eval_affine(Q.element(1)) == Q.element(Fraction(1, 2))
assert rf.eval_affine(Q.element(-1)) is None
assert rf.eval_point(ProjectivePoint.infinity(Q)) == ProjectivePoint.finite(Q, Q.one)
assert rf.eval_point(ProjectivePoint.finite(Q, Q.element(-1))).is_infinity
assert rf.order_at(ProjectivePoint.finite(Q, Q.zero)) == 1
assert rf.order_at(ProjectivePoint.finite(Q, Q.element(-1))) == -1
assert rf.order_at(ProjectivePoint.infinity(Q)) == 0

xr = RationalFunction.x(Q)
sq_map = xr * xr
inv = RationalFunction(Poly.one(Q), Poly.x(Q))
comp = sq_map.compose(inv)    # (1/x)^2
assert comp == RationalFunction(Poly.one(Q), Poly(Q, [0, 0, 1]))
comp2 = inv.compose(sq_map)   # 1/x^2 as well
assert comp2 == comp
# arithmetic
s = rf + inv   # x/(x+1) + 1/x = (x^2 + x + 1)/(x(x+1))
assert s == RationalFunction(Poly(Q, [1, 1, 1]), Poly(Q, [0, 1, 1]))
assert (rf * inv) == RationalFunction(Poly.one(Q), Poly(Q, [1, 1]))
assert (rf / rf) == RationalFunction.constant(Q, 1)
assert (rf - rf).is_zero
assert rf ** 2 == rf * rf
assert rf ** (-1) == RationalFunction(Poly(Q, [1, 1]), Poly(Q, [0, 1]))
# order at infinity of x^2+1: -2
p2 = RationalFunction.from_poly(Poly(Q, [1, 0, 1]))
assert p2.order_at(ProjectivePoint.infinity(Q)) == -2
assert p2.eval_point(ProjectivePoint.infinity(Q)).is_infinity

# degree
assert rf.degree == 1 and p2.degree == 2 and comp.degree == 2

# compose over F5, morphism 2x
dbl = RationalFunction(Poly(F5, [0, 2]), Poly.one(F5))
pt = ProjectivePoint.finite(F5, F5.element(3))
assert dbl.eval_point(pt) == ProjectivePoint.finite(F5, F5.element(1))

print("ALL POLY SMOKE TESTS PASSED")
