import random
from fractions import Fraction

from corrdyn.fields import rationals, make_prime_field
from corrdyn.points import ProjectivePoint
from corrdyn.poly import Poly, RationalFunction
from corrdyn import corr
from corrdyn.corr import build, transpose, compose, is_symmetric
from corrdyn import oper
from corrdyn.errors import (
    NotForwardComplete,
    NotRamificationIncreasing,
    NotDisjoint,
    ZeroPolynomial,
)

Q = rationals()
F5 = make_prime_field(5)
F7 = make_prime_field(7)


def rf(field, num, den=(1,)):
    return RationalFunction(Poly(field, num), Poly(field, den))


def pt(field, a):
    return ProjectivePoint.finite(field, field.element(a))


def inf(field):
    return ProjectivePoint.infinity(field)


def check(cond, msg):
    if not cond:
        raise AssertionError(msg)


# --- td_apply -------------------------------------------------------------
sq = build(Q, f=rf(Q, [0, 0, 1]))          # x^2
dup = build(Q, f=rf(Q, [0, 2]))            # 2x
neg = build(Q, f=rf(Q, [0, -1]))           # -x

check(oper.td_apply(sq, rf(Q, [1])) == rf(Q, [2]), "trace of 1")
check(oper.td_apply(sq, rf(Q, [0, 0, 0, 0, 1])) == rf(Q, [0, 0, 2]), "x^4 -> 2x^2")
check(oper.td_apply(transpose(sq), rf(Q, [0, 1])) == rf(Q, [0, 0, 1]),
      "backward trace is composition")
check(oper.td_apply(sq, rf(Q, [0, 1])) == rf(Q, []), "odd power sums vanish")
check(oper.td_apply(sq, rf(Q, [0, 0, 1])) == rf(Q, [0, 2]), "x^2 -> 2x")
# pole input
check(oper.td_apply(dup, rf(Q, [1], [0, 1])) == rf(Q, [2], [0, 1]),
      "1/x -> 2/x under doubling")
print("td_apply OK")

# --- td_power_sums --------------------------------------------------------
ps = oper.td_power_sums(sq, 4)
check(ps[0] == rf(Q, [2]) and ps[1].is_zero and ps[2] == rf(Q, [0, 2]),
      "power sums of squaring")
check(ps[3].is_zero and ps[4] == rf(Q, [0, 0, 2]), "higher power sums")
check(oper.td_power_sums(dup, 1)[1] == rf(Q, [0, 1], [2]), "p_1 = y/2")

rng = random.Random(11)
for trial in range(20):
    coeffs = [[rng.randrange(7) for _ in range(rng.randrange(1, 4))] for _ in range(2)]
    num = Poly(F7, coeffs[0] + [1])
    c = build(F7, f=RationalFunction(num, Poly(F7, coeffs[1] + [rng.choice([1, 2, 3])])))
    sums = oper.td_power_sums(c, 6)
    for i in range(7):
        mono = rf(F7, [0] * i + [1])
        check(oper.td_apply(c, mono) == sums[i], f"newton vs trace {trial}/{i}")
print("td_power_sums OK")

# --- td_matrix ------------------------------------------------------------
op = oper.td_matrix(sq, [inf(Q)], 2)
check(op.basis_labels() == ["1", "x", "x^2"], "basis order")
expect = [["2", "0", "0"], ["0", "0", "2"], ["0", "0", "0"]]
check([[str(e) for e in row] for row in op.matrix] == expect, "squaring matrix")
check(op.min_poly == Poly(Q, [0, 0, -2, 1]), "min poly X^2(X-2)")
check(op.char_poly == Poly(Q, [0, 0, -2, 1]), "char poly X^2(X-2)")

op1 = oper.td_matrix(dup, [inf(Q)], 1)
check([[str(e) for e in row] for row in op1.matrix] == [["1", "0"], ["0", "1/2"]],
      "doubling level-1 matrix")

mp2 = oper.td_min_poly(neg, [inf(Q)], 2)
check(mp2 == Poly(Q, [-1, 0, 1]), "involution min poly X^2-1")
mpd = oper.td_min_poly(dup, [inf(Q)], 2)
target = Poly(Q, [-1, 1])
for ev in (Fraction(1, 2), Fraction(1, 4)):
    target = target * Poly(Q, [Q.element(-ev), Q.one])
check(mpd == target, "doubling min poly (X-1)(X-1/2)(X-1/4)")

# fixed point 1 of squaring: forward fiber of 1 is {1}, so S={1} works
op_fix = oper.td_matrix(sq, [pt(Q, 1)], 2)
check(op_fix.dim == 3, "fixed-point support accepted")
try:
    oper.td_matrix(sq, [pt(Q, 2)], 2)
    raise AssertionError("S={2} must fail")
except NotForwardComplete:
    pass
try:
    oper.td_matrix(transpose(sq), [pt(Q, 0), inf(Q)], 2)
    raise AssertionError("backward squaring is ramification-decreasing at 0")
except NotRamificationIncreasing:
    pass
print("td_matrix OK")

# --- lin_finitary_test ----------------------------------------------------
v = oper.lin_finitary_test(neg, [inf(Q)], 6)
check(v.status == "CertifiedAnnihilated" and v.annihilator == Poly(Q, [-1, 0, 1]),
      "involution certified with X^2-1")
v = oper.lin_finitary_test(sq, [inf(Q)], 12)
check(v.status == "NoAnnihilatorUpToDegree", f"squaring verdict: {v.status}")
check(v.observed_degree == 5, f"observed degree {v.observed_degree}")
v = oper.lin_finitary_test(dup, [inf(Q)], 12)
check(v.status == "NoAnnihilatorUpToDegree", "doubling verdict")
check(v.observed_degree == 13, "doubling grows every level")
print("lin_finitary_test OK")

# --- qtd_check ------------------------------------------------------------
dup5 = build(F5, f=rf(F5, [0, 2]))
orbit = [pt(F5, a) for a in (1, 2, 4, 3)]
res = oper.qtd_check(dup5, Poly(F5, [-1, 1]), orbit, radius=4)
check(res.status == "FalsifiedAt", "X-1 falsified")
check(res.pair == (pt(F5, 1), pt(F5, 1)), f"first falsifier {res.pair}")
pairs = [(str(a), str(b)) for a, b, _ in res.defects]
check(("[1:1]", "[2:1]") in pairs, "spec pair (1,2) also falsifies")

neg_edges = [pt(Q, 1), pt(Q, -1)]
res = oper.qtd_check(neg, Poly(Q, [-1, 0, 1]), neg_edges, radius=2)
check(res.status == "Holds", "X^2-1 holds on the 2-cycle")
try:
    oper.qtd_check(neg, Poly.zero(Q), neg_edges, radius=1)
    raise AssertionError("zero polynomial accepted")
except ZeroPolynomial:
    pass
print("qtd_check OK")

# --- almost_split ---------------------------------------------------------
rep = oper.almost_split(dup, [inf(Q)], [pt(Q, 0)], 3)
check(rep["n_prime"] == 3, "n' = 3")
check(rep["dim"] == 1, "dim V = 1")
check(rep["basis"][0] == rf(Q, [0, 0, 0, 1]), "V = span(x^3)")
check(rep["complement_ok"] and rep["dim_bound_ok"], "split checks")

rep = oper.almost_split(dup, [inf(Q)], [pt(Q, 0)], 3, Spp=[pt(Q, 1)])
check(rep["second_n_prime"] == 3, "second vanishing order")
check(rep["intersection_dim"] == 0 and rep["intersection_ok"] is True,
      "V and V'' meet trivially")
check(rep["intersection_threshold"] == Fraction(0), "threshold (1+1-2)/1")
try:
    oper.almost_split(dup, [inf(Q)], [inf(Q)], 3)
    raise AssertionError("overlapping supports accepted")
except NotDisjoint:
    pass

# n' = n when both supports are singletons; window identity at other sizes
for n in range(1, 8):
    r = oper.almost_split(dup, [inf(Q)], [pt(Q, 0)], n)
    check(r["n_prime"] == n, "n' = n for singleton supports")
    check(r["complement_ok"] and r["dim_bound_ok"], f"split at level {n}")
rep = oper.almost_split(dup, [inf(Q), pt(Q, 1)], [pt(Q, 0), pt(Q, 2)], 4)
check(rep["complement_ok"] and rep["dim_bound_ok"], "two-point supports")
lhs = (4 - 1) * 2 - rep["n_prime"] * 2
check(-2 < lhs <= 0, "degree window")
print("almost_split OK")

# --- invariants -----------------------------------------------------------
rng = random.Random(5)
for trial in range(10):
    f1 = rf(F7, [rng.randrange(7) for _ in range(3)] + [1])
    g1 = rf(F7, [rng.randrange(7) for _ in range(2)] + [1],
            [rng.randrange(1, 7), 1])
    c = build(F7, F=corr.BiPoly.from_poly(Poly(F7, [1, 0, 1]), "x") * corr.BiPoly.var_y(F7) - corr.BiPoly.from_poly(Poly(F7, [0, 1, 2]), "x")) if False else build(F7, f=rf(F7, [rng.randrange(7), rng.randrange(1, 7), 1]))
    a, b = F7.element(rng.randrange(1, 7)), F7.element(rng.randrange(7))
    lhs = oper.td_apply(c, a * f1 + b * g1)
    rhs = a * oper.td_apply(c, f1) + b * oper.td_apply(c, g1)
    check(lhs == rhs, f"linearity {trial}")

sym = build(Q, F=corr.BiPoly.var_x(Q) * corr.BiPoly.var_y(Q) - corr.BiPoly.one(Q))
check(is_symmetric(sym), "xy-1 symmetric")
for f in (rf(Q, [1, 2, 3]), rf(Q, [1], [1, 1])):
    check(oper.td_apply(sym, f) == oper.td_apply(transpose(sym), f),
          "transpose duality on symmetric divisor")

# composition identity
rng = random.Random(7)
for trial in range(5):
    ci = build(F7, f=rf(F7, [rng.randrange(7), rng.randrange(1, 7), 1]))
    co = build(F7, f=rf(F7, [rng.randrange(7), 1, rng.randrange(1, 7)]))
    f = rf(F7, [rng.randrange(7), 1], [rng.randrange(1, 7), 0, 1])
    lhs = oper.td_apply(compose(co, ci), f)
    rhs = oper.td_apply(co, oper.td_apply(ci, f))
    check(lhs == rhs, f"composition identity {trial}")

# graph agreement on an etale cycle: doubling orbit over F5
fcn = rf(F5, [1], [4, 1])        # 1/(x+4) = 1/(x-1), no pole on {2,4,3,1}? pole at 1!
fcn = rf(F5, [1], [1, 1])        # 1/(x+1); pole at -1=4 in orbit, avoid
fcn = rf(F5, [0, 1], [2, 0, 1])  # x/(x^2+2), den roots non-residues? -2=3 non-square mod 5
img = oper.td_apply(dup5, fcn)
for y in orbit:
    direct = img.eval_affine(y.value())
    src = F5.element(3) * y.value()     # x = y/2 = 3y
    check(direct == fcn.eval_affine(src), "graph agreement at etale vertex")
print("invariants OK")
print("ALL OPER SMOKE TESTS PASSED")
