"""Finding complete sets: budgeted closure searches from a seed point,
certification, the classification flags on the induced finite graph,
counts that grow with the extension budget, and the volcano structure
over the etale cycles of the squaring map.

Run with: python3 demos/02_complete_sets_and_volcanoes.py
"""

from corrdyn.corr import build
from corrdyn.fields import make_prime_field, rationals
from corrdyn.graph import (
    complete_set_search,
    enumerate_complete_sets,
    morphism_graph_classify,
    report_to_dot,
)
from corrdyn.parse import RATIONAL, parse_expression, parse_point


def banner(title):
    print()
    print("=" * 64)
    print(title)
    print("=" * 64)


def describe(report):
    verts = ", ".join(str(p) for p in report.vertices)
    line = f"  seed {report.seed}: {report.status}, {{{verts}}}"
    cl = report.classification
    flags = [name for name in ("etale", "equiramified", "ram_increasing",
                               "ram_decreasing", "consistently_ramified")
             if getattr(cl, name)]
    print(line)
    print(f"    flags: {', '.join(flags) if flags else '(none)'}")


def main():
    Q = rationals()
    F5 = make_prime_field(5)
    sq5 = build(F5, f=parse_expression("x^2", RATIONAL, F5))

    banner("1. Closure search from single seeds (x -> x^2 over F5)")
    for text in ("[0:1]", "[1:0]", "[2:1]"):
        report = complete_set_search(sq5, parse_point(F5, text))
        describe(report)
    print()
    print("the closure of 2 keeps sprouting square roots in bigger and")
    print("bigger extensions, so it blows the budget instead of closing")

    banner("2. Enumerating complete sets as the field grows")
    for K in (1, 2, 3):
        reports = enumerate_complete_sets(sq5, K)
        certified = sum(1 for r in reports if r.status == "Certified")
        print(f"  budget 5^{K}: {len(reports)} sets found, "
              f"{certified} certified")

    banner("3. Volcano structure over an etale cycle")
    m = morphism_graph_classify(sq5, parse_point(F5, "[2:1]"), depth=3)
    print(f"  seed 2 reaches a cycle of length {m['cycle_length']} "
          f"after a tail of {m['tail_length']}")
    print(f"  etale cycle: {m['etale_cycle']}, "
          f"volcano valid to depth {m['volcano_depth_checked']}: "
          f"{m['volcano_valid']}")
    print(f"  volcano type (cycle length, degree): {m['volcano_type']}")
    for i, level in enumerate(m["levels"]):
        pts = ", ".join(str(p) for p in level)
        print(f"  level {i}: {len(level)} points  [{pts}]")
    print()
    print("each level doubles: the backward tree of an etale cycle of the")
    print("squaring map is a binary volcano")

    banner("4. Totally ramified cycles are the finite complete sets")
    m0 = morphism_graph_classify(sq5, parse_point(F5, "[0:1]"))
    print(f"  seed 0: cycle length {m0['cycle_length']}, totally ramified "
          f"{m0['cycle_totally_ramified']} -> finite complete set")
    m2 = morphism_graph_classify(sq5, parse_point(F5, "[2:1]"), depth=0)
    print(f"  seed 2: cycle length {m2['cycle_length']}, totally ramified "
          f"{m2['cycle_totally_ramified']} -> closure is infinite")

    banner("5. Infinite fields: budgets are load bearing")
    dbl = build(Q, f=parse_expression("2*x", RATIONAL, Q))
    for text in ("[0:1]", "[1:0]"):
        describe(complete_set_search(dbl, parse_point(Q, text)))
    stuck = complete_set_search(dbl, parse_point(Q, "[1:1]"), max_size=8)
    print(f"  seed [1:1]: {stuck.status} after {len(stuck.vertices)} points "
          f"(the orbit 1, 2, 4, 8, ... never closes)")

    banner("6. DOT export of a certified set")
    report = complete_set_search(sq5, parse_point(F5, "[0:1]"))
    print(report_to_dot(report))


if __name__ == "__main__":
    main()
