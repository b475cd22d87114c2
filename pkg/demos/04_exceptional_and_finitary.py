"""Global structure questions: exceptional sets of maps, backward
kernels of divisors, the size bound for complete sets of unbalanced
correspondences, core searches (does the correspondence commute with a
smaller map?), overall finitary verdicts, and height growth along
cycles over the rationals.

Run with: python3 demos/04_exceptional_and_finitary.py
"""

from corrdyn.analysis import (
    cycle_height_check,
    finitary_verdict,
    naive_height,
    pakovich_bound,
    unbalanced_bound,
    core_search,
)
from corrdyn.corr import build, transpose
from corrdyn.fields import make_prime_field, rationals
from corrdyn.graph import (
    backward_kernel_search,
    complete_set_search,
    exceptional_set_morphism,
)
from corrdyn.parse import BIVARIATE, RATIONAL, parse_expression, parse_point


def banner(title):
    print()
    print("=" * 64)
    print(title)
    print("=" * 64)


def main():
    Q = rationals()
    F5 = make_prime_field(5)

    banner("1. Exceptional sets of rational maps")
    for text in ("x^2", "x^2 - 1", "(x^2 + 1)/(2*x)"):
        f = parse_expression(text, RATIONAL, Q)
        pts = exceptional_set_morphism(f, Q)
        print(f"  {text}: {{{', '.join(str(p) for p in pts)}}}")
    print("  (a degree >= 2 map has at most two exceptional points)")

    banner("2. Backward kernel of an unbalanced divisor")
    cusp = build(Q, F=parse_expression("x^2 - y^3", BIVARIATE, Q))
    pts = backward_kernel_search(cusp, max_size=40)
    print(f"  x^2 = y^3: K_backward = {{{', '.join(str(p) for p in pts)}}}")
    print(f"  size bound for its finite complete sets: "
          f"{unbalanced_bound(cusp)} (genus 0 refines it to "
          f"{unbalanced_bound(cusp, genus=0)})")
    print(f"  for the graph of x^2 the bound is "
          f"{unbalanced_bound(build(Q, f=parse_expression('x^2', RATIONAL, Q)))}")

    banner("3. Core searches: commuting with a smaller map")
    dbl = build(Q, f=parse_expression("2*x", RATIONAL, Q))
    print(f"  polynomial core of x -> 2x through degree 6: "
          f"{core_search(dbl, 'polynomial', 6)}")
    lam, h = core_search(dbl, "twisted", 1)[0]
    print(f"  twisted pair: h = {h.to_str()} with h(2x) = {lam} * h(x) "
          f"... the eigenvalue is {lam}")
    neg = build(Q, f=parse_expression("-x", RATIONAL, Q))
    found = core_search(neg, "polynomial", 2)
    print(f"  polynomial core of x -> -x: {found.to_str()} "
          f"(x^2 coequalizes x and -x)")

    banner("4. Finitary verdicts")
    dbl5 = build(F5, f=parse_expression("2*x", RATIONAL, F5))
    for name, c in (
        ("x^2 = y^3 (unbalanced)", cusp),
        ("x -> -x (automorphism)", neg),
        ("x -> 2x over F5 (finite order)", dbl5),
        ("x*y = 1 over Q (has a core)", build(Q, F=parse_expression(
            "x*y - 1", BIVARIATE, Q))),
        ("x -> 2x over Q (escaping orbit)", dbl),
    ):
        v = finitary_verdict(c)
        extras = []
        if v.reason:
            extras.append(v.reason)
        if v.automorphism_order:
            extras.append(f"automorphism order {v.automorphism_order}")
        if v.core is not None:
            extras.append(f"core {v.core.to_str()}")
        if v.status == "Evidence":
            extras.append(f"direction: {v.direction}")
        print(f"  {name}: {v.status}" +
              (f"  [{'; '.join(extras)}]" if extras else ""))

    banner("5. Heights along a certified cycle over Q")
    for text in ("[2:3]", "[7:1]", "[1:0]", "[4:6]"):
        p = parse_point(Q, text)
        h, pair = naive_height(p)
        print(f"    h({p}) = log max({pair[0]}, {pair[1]}) = {h:.4f}")
    sq = build(Q, f=parse_expression("x^2", RATIONAL, Q))
    rep = complete_set_search(sq, parse_point(Q, "[0:1]"))
    out = cycle_height_check(sq, rep)
    print(f"  fixed point 0 of x -> x^2: heights {out['heights']}, "
          f"bound {out['bound']:.4f}, ok = {out['ok']}")
    print("  (points of a finite complete set of an expanding map must")
    print("  have height below the contraction bound)")

    banner("6. Degree bound for commuting pairs")
    for g_D, d in ((0, 1), (2, 3), (6, 3)):
        out = pakovich_bound(g_D, d)
        print(f"  genus-degree input ({g_D}, {d}): bound {out['bound']}, "
              f"equality possible: {out['equality_possible']}")
    _ = transpose  # re-exported for symmetry experiments


if __name__ == "__main__":
    main()
