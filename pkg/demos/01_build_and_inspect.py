"""Three ways to build a correspondence on the projective line, and what
the library can tell you about one once it exists: components, bidegree,
fibers with multiplicities, local ramification at an edge, and the
algebra of transpose, sum, and composition.

Run with: python3 demos/01_build_and_inspect.py
"""

from corrdyn.corr import build, compose, corr_sum, edge_local, fiber, transpose
from corrdyn.fields import make_prime_field, rationals
from corrdyn.parse import BIVARIATE, RATIONAL, parse_expression, parse_point


def banner(title):
    print()
    print("=" * 64)
    print(title)
    print("=" * 64)


def show(c, name):
    print(f"{name}: bidegree {(c.d1, c.d2)}")
    for comp, mult in c.components:
        print(f"  component {comp.to_str()}  (multiplicity {mult})")


def main():
    Q = rationals()
    F5 = make_prime_field(5)

    banner("1. The graph of a rational map")
    f = parse_expression("x^2", RATIONAL, Q)
    sq = build(Q, f=f)
    show(sq, "graph of x -> x^2")
    print("forward fiber over x = 3:",
          [(str(p), m) for p, m in fiber(sq, "forward", parse_point(Q, "[3:1]"))[0]])
    print("backward fiber over y = 9:",
          [(str(p), m) for p, m in fiber(sq, "backward", parse_point(Q, "[9:1]"))[0]])
    print("backward fiber over y = 0 (ramified):",
          [(str(p), m) for p, m in fiber(sq, "backward", parse_point(Q, "[0:1]"))[0]])

    banner("2. A divisor that is not a graph")
    F = parse_expression("x^2 - y^3", BIVARIATE, Q)
    cusp = build(Q, F=F)
    show(cusp, "divisor x^2 = y^3")
    print("this is the multivalued map x -> x^(2/3);")
    print("backward fiber over y = 64:",
          [(str(p), m) for p, m in fiber(cusp, "backward", parse_point(Q, "[64:1]"))[0]])
    e = edge_local(cusp, parse_point(Q, "[8:1]"), parse_point(Q, "[4:1]"))
    print(f"edge 8 -> 4 has local multiplicities e1 = {e.e1}, e2 = {e.e2}")
    e0 = edge_local(cusp, parse_point(Q, "[0:1]"), parse_point(Q, "[0:1]"))
    print(f"edge 0 -> 0 has e1 = {e0.e1}, e2 = {e0.e2} (totally ramified)")

    banner("3. Transpose, sum, composition")
    recip = build(Q, F=parse_expression("x*y - 1", BIVARIATE, Q))
    show(recip, "divisor x*y = 1")
    print("its transpose is itself (symmetric divisor):",
          transpose(recip) == recip)
    total = corr_sum(sq, recip)
    show(total, "sum of the two above")
    twice = compose(sq, sq)
    show(twice, "x^2 composed with itself")
    print("composing with the transpose picks up multiplicity from the")
    print("shared ramification:")
    show(compose(transpose(sq), sq), "(x^2)^T after x^2")

    banner("4. Everything works over finite fields too")
    c5 = build(F5, F=parse_expression("x^2 - y^3", BIVARIATE, F5))
    show(c5, "x^2 = y^3 over F5")
    print("backward fiber over y = 4:",
          [(str(p), m) for p, m in fiber(c5, "backward", parse_point(F5, "[4:1]"))[0]])


if __name__ == "__main__":
    main()
