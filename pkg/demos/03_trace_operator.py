"""The trace operator of a correspondence: applying it to rational
functions, power sums, its exact matrix on a pole-order filtration, the
minimal polynomial of that action, certified annihilator searches, and
the path-count identity an annihilator must satisfy.

Run with: python3 demos/03_trace_operator.py
"""

import random

from corrdyn import oper
from corrdyn.corr import build, corr_sum
from corrdyn.fields import make_prime_field, rationals
from corrdyn.parse import RATIONAL, parse_expression, parse_point
from corrdyn.poly import Poly


def banner(title):
    print()
    print("=" * 64)
    print(title)
    print("=" * 64)


def main():
    Q = rationals()
    F5 = make_prime_field(5)

    banner("1. Applying the trace: sum f over the backward fiber")
    sq = build(Q, f=parse_expression("x^2", RATIONAL, Q))
    for text in ("x", "x^2", "1/x", "x^3 + x"):
        f = parse_expression(text, RATIONAL, Q)
        print(f"  T({text}) = {oper.td_apply(sq, f).to_str()}")
    print()
    print("the backward fiber of y under x -> x^2 is {sqrt(y), -sqrt(y)},")
    print("so odd powers cancel and even powers double")

    banner("2. Power sums of the fiber as rational functions of the base")
    sums = oper.td_power_sums(sq, 4)
    for e, s in enumerate(sums):
        print(f"  sum of fiber points^{e} = {s.to_str()}")

    banner("3. The exact matrix on a pole filtration")
    op = oper.td_matrix(sq, [parse_point(Q, "[1:0]")], 2)
    print(f"  support {{infinity}}, pole order <= 2, dimension {op.dim}")
    print(f"  basis: {op.basis_labels()}")
    for j, label in enumerate(op.basis_labels()):
        coords = ", ".join(str(op.matrix[i][j]) for i in range(op.dim))
        print(f"  T({label}) has coordinates [{coords}]")
    print(f"  characteristic polynomial: {op.char_poly.to_str('X')}")
    print(f"  minimal polynomial:        {op.min_poly.to_str('X')}")

    banner("4. A certified annihilator")
    neg = build(Q, f=parse_expression("-x", RATIONAL, Q))
    verdict = oper.lin_finitary_test(neg, [parse_point(Q, "[1:0]")], 6)
    print(f"  x -> -x: {verdict.status}, annihilator "
          f"{verdict.annihilator.to_str('X')}")
    print("  (the trace of an involution squares to the identity)")
    verdict = oper.lin_finitary_test(sq, [parse_point(Q, "[1:0]")], 12)
    print(f"  x -> x^2: {verdict.status} "
          f"(degrees grow without a recurrence)")

    banner("5. Two maps at once: the trace of a sum")
    c = corr_sum(build(F5, f=parse_expression("2*x", RATIONAL, F5)),
                 build(F5, f=parse_expression("3*x", RATIONAL, F5)))
    support = [parse_point(F5, "[1:0]")]
    verdict = oper.lin_finitary_test(c, support, 12, rng=random.Random(0))
    print(f"  D(2x) + D(3x) over F5: {verdict.status}")
    print(f"  annihilator candidate: {verdict.annihilator.to_str('X')}")
    print("  eigenvalues of the trace cycle through 2^-j + 3^-j mod 5,")
    print("  which takes the values 2, 0, 3, 0, ... so X^3 + X kills it")

    banner("6. Annihilators imply a path-count identity")
    S = [parse_point(F5, f"[{a}:1]") for a in (1, 2, 3, 4)]
    good = Poly(F5, [0, 1, 0, 1])
    bad = Poly(F5, [1, 1])
    for Qpoly in (good, bad):
        res = oper.qtd_check(c, Qpoly, S, 4)
        line = f"  Q = {Qpoly.to_str('X')}: {res.status}"
        if res.pair is not None:
            x, y = res.pair
            line += f" at pair ({x}, {y}), value {res.value}"
        print(line)


if __name__ == "__main__":
    main()
