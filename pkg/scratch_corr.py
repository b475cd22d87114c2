import random
from fractions import Fraction

from corrdyn.fields import rationals, make_prime_field, make_extension
from corrdyn.poly import Poly, BiPoly, RationalFunction
from corrdyn.points import ProjectivePoint
from corrdyn import corr
from corrdyn.errors import Inseparable, NotAnEdge, DegenerateComponent

Q = rationals()
F5 = make_prime_field(5)
F2 = make_prime_field(2)

def rf(num, den=None, field=Q):
    return RationalFunction(Poly(field, num), Poly(field, den or [1]))

x = BiPoly.var_x(Q)
y = BiPoly.var_y(Q)

# build from map: f = x^2
Dx2 = corr.build(Q, f=rf([0, 0, 1]))
assert Dx2.bidegree == (1, 2), Dx2.bidegree
assert Dx2.component_strings() == [("x^2-y", 1)], Dx2.component_strings()

# build from polynomial: (y-x^2)^2
C = corr.build(Q, F=(y - x * x) ** 2)
assert len(C.components) == 1
assert C.components[0][1] == 2
assert C.components[0][0] == (x * x - y), C.component_strings()
assert C.bidegree == (2, 4)

# inseparable over F2
x2 = BiPoly.var_x(F2)
y2 = BiPoly.var_y(F2)
try:
    corr.build(F2, F=y2 * y2 - x2)
    raise AssertionError("expected Inseparable")
except Inseparable:
    pass

# also via the map path: x^2 over F2 is Frobenius
try:
    corr.build(F2, f=rf([0, 0, 1], field=F2))
    raise AssertionError("expected Inseparable")
except Inseparable:
    pass

# degenerate component
try:
    corr.build(Q, F=(x - 1) * (y - x))
    raise AssertionError("expected DegenerateComponent")
except DegenerateComponent:
    pass

# transpose
T = corr.transpose(Dx2)
assert T.bidegree == (2, 1)
assert T.component_strings() == [("x-y^2", 1)], T.component_strings()
assert corr.transpose(T) == Dx2
sym = corr.build(Q, F=x * y - 1)
assert corr.transpose(sym) == sym
assert corr.is_symmetric(sym)
assert not corr.is_symmetric(Dx2)
both = corr.corr_sum(Dx2, T)
assert corr.is_symmetric(both)

# sum bidegrees
Dx3 = corr.build(Q, f=rf([0, 0, 0, 1]))
S = corr.corr_sum(Dx2, Dx3)
assert S.bidegree == (2, 5), S.bidegree
SS = corr.corr_sum(Dx2, Dx2)
assert SS.components[0][1] == 2 and len(SS.components) == 1

# compose fast path
C6 = corr.compose(Dx3, Dx2)
assert C6.morphism is not None
assert C6.component_strings() == [("x^6-y", 1)], C6.component_strings()
assert C6.bidegree == (1, 6)

# compose transpose fast path
tD2, tD3 = corr.transpose(Dx2), corr.transpose(Dx3)
tC = corr.compose(tD2, tD3)
assert tC.component_strings() == [("x-y^6", 1)], tC.component_strings()
assert tC.bidegree == (6, 1)

# mixed: tD_{x^2} after D_{x^2} -> components x-y and x+y
M = corr.compose(tD2, Dx2)
assert M.bidegree == (2, 2), M.bidegree
names = sorted(s for s, m in M.component_strings())
assert names == ["x+y", "x-y"], names
assert all(m == 1 for _, m in M.component_strings())

# compose with identity, generic route (strip the tag to force resultants)
Did = corr.build(Q, f=rf([0, 1]))
untagged = corr.Correspondence(Q, list(Dx2.components))
out = corr.compose(corr.Correspondence(Q, list(Did.components)), untagged)
assert out == untagged, out.component_strings()
out2 = corr.compose(untagged, corr.Correspondence(Q, list(Did.components)))
assert out2 == untagged

# bidegree multiplicativity on the generic route
A = corr.build(Q, F=y - x * x)
B = corr.build(Q, F=y * y * y - x)   # tD_{x^3} shape
AB = corr.compose(A, B)
assert AB.bidegree == (A.d1 * B.d1, A.d2 * B.d2), AB.bidegree

# transpose(compose(A,B)) == compose(transpose(B), transpose(A))
lhs = corr.transpose(corr.compose(A, B))
rhs = corr.compose(corr.transpose(B), corr.transpose(A))
assert lhs == rhs

# fibers over Q
inf = ProjectivePoint.infinity(Q)
p3 = ProjectivePoint.finite(Q, Q.element(3))
p0 = ProjectivePoint.finite(Q, Q.element(0))
pm1 = ProjectivePoint.finite(Q, Q.element(-1))
roots, resid = corr.fiber(Dx2, corr.FORWARD, p3)
assert [(str(p), m) for p, m in roots] == [("[9:1]", 1)] and resid == []
roots, resid = corr.fiber(Dx2, corr.BACKWARD, p0)
assert [(str(p), m) for p, m in roots] == [("[0:1]", 2)] and resid == []
roots, resid = corr.fiber(Dx2, corr.BACKWARD, pm1)
assert roots == [] and resid == [2], (roots, resid)
roots, resid = corr.fiber(Dx2, corr.BACKWARD, p3)
assert roots == [] and resid == [2]

# edge locals
e = corr.edge_local(Dx2, p0, p0)
assert (e.e1, e.e2) == (1, 2), (e.e1, e.e2)
assert e.ram_increasing and not e.equiramified and not e.etale
e = corr.edge_local(Dx2, inf, inf)
assert (e.e1, e.e2) == (1, 2)
e = corr.edge_local(Dx2, p3, ProjectivePoint.finite(Q, Q.element(9)))
assert e.etale
try:
    corr.edge_local(sym, ProjectivePoint.finite(Q, Q.element(2)),
                    ProjectivePoint.finite(Q, Q.element(3)))
    raise AssertionError("expected NotAnEdge")
except NotAnEdge:
    pass

# transpose swaps (e1, e2)
e = corr.edge_local(corr.transpose(Dx2), p0, p0)
assert (e.e1, e.e2) == (2, 1)

# fiber sums over F_q equal d1 / d2 with a big extension bound
rng = random.Random(7)
x5 = BiPoly.var_x(F5)
y5 = BiPoly.var_y(F5)
D = corr.build(F5, F=(y5 * y5 - x5 * x5 * x5 - 1) * (x5 * y5 - 2))
for trial in range(6):
    a = rng.randrange(5)
    pt = ProjectivePoint.finite(F5, F5.element(a))
    roots, resid = corr.fiber(D, corr.FORWARD, pt, ext_bound=6, rng=random.Random(1))
    assert resid == [], resid
    assert sum(m for _, m in roots) == D.d1, (a, roots)
    roots, resid = corr.fiber(D, corr.BACKWARD, pt, ext_bound=6, rng=random.Random(1))
    assert resid == []
    assert sum(m for _, m in roots) == D.d2, (a, roots)
pt = ProjectivePoint.infinity(F5)
roots, _ = corr.fiber(D, corr.FORWARD, pt, ext_bound=6, rng=random.Random(1))
assert sum(m for _, m in roots) == D.d1
roots, _ = corr.fiber(D, corr.BACKWARD, pt, ext_bound=6, rng=random.Random(1))
assert sum(m for _, m in roots) == D.d2

# morphism over F5: 2x, forward fiber of a is 2a
dbl = corr.build(F5, f=rf([0, 2], field=F5))
pt = ProjectivePoint.finite(F5, F5.element(3))
roots, _ = corr.fiber(dbl, corr.FORWARD, pt)
assert [(str(p), m) for p, m in roots] == [("[1:1]", 1)]

# xy - 1 edge at (2, 3) over Q is NotAnEdge but (2, 1/2) is fine
e = corr.edge_local(sym, ProjectivePoint.finite(Q, Q.element(2)),
                    ProjectivePoint.finite(Q, Q.element(Fraction(1, 2))))
assert e.etale

print("ALL CORR SMOKE TESTS PASSED")
