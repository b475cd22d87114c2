"""Shared builders and independent oracles for the test suite."""

import math
import random

from corrdyn.corr import BACKWARD, FORWARD, build, fiber
from corrdyn.errors import CorrdynError
from corrdyn.fields import make_extension, make_prime_field, rationals
from corrdyn.graph import _ambient_for
from corrdyn.points import ProjectivePoint
from corrdyn.poly import BiPoly, Poly, RationalFunction, embedding

Q = rationals()
F2 = make_prime_field(2)
F3 = make_prime_field(3)
F5 = make_prime_field(5)
F7 = make_prime_field(7)


def rf(field, num, den=(1,)):
    return RationalFunction(Poly(field, list(num)), Poly(field, list(den)))


def pt(field, a):
    return ProjectivePoint.finite(field, field.element(a))


def inf(field):
    return ProjectivePoint.infinity(field)


def square_map(field=Q):
    return build(field, f=rf(field, [0, 0, 1]))


def doubling_map(field=Q):
    return build(field, f=rf(field, [0, 2]))


def negation_map(field=Q):
    return build(field, f=rf(field, [0, -1]))


def reciprocal_divisor(field=Q):
    return build(field, F=BiPoly(field, {(1, 1): field.one,
                                         (0, 0): -field.one}))


def cusp_divisor(field=Q):
    # x^2 - y^3: projections of degree (3, 2)
    return build(field, F=BiPoly(field, {(2, 0): field.one,
                                         (0, 3): -field.one}))


def random_bipoly(rng, field, dx, dy):
    """Dense random bivariate polynomial of exact bidegree (dx, dy)."""
    q = field.order
    terms = {}
    for i in range(dx + 1):
        for j in range(dy + 1):
            terms[(i, j)] = field.element(rng.randrange(q))
    terms[(dx, rng.randrange(dy + 1))] = field.element(rng.randrange(1, q))
    terms[(rng.randrange(dx + 1), dy)] = field.element(rng.randrange(1, q))
    return BiPoly(field, terms)


def random_correspondence(rng, field, max_dx, max_dy):
    """Keeps sampling until the divisor validates."""
    while True:
        dx = rng.randrange(1, max_dx + 1)
        dy = rng.randrange(1, max_dy + 1)
        try:
            return build(field, F=random_bipoly(rng, field, dx, dy))
        except CorrdynError:
            continue


def random_rational_map(rng, field, max_deg=2):
    while True:
        num = Poly(field, [field.element(rng.randrange(field.order))
                           for _ in range(rng.randrange(1, max_deg + 2))])
        den = Poly(field, [field.element(rng.randrange(field.order))
                           for _ in range(rng.randrange(1, max_deg + 2))])
        if num.is_zero or den.is_zero:
            continue
        return RationalFunction(num, den)


def splitting_fiber(c, b, rng=None):
    """Backward fiber of b with every root materialized in one splitting
    extension; returns (ambient field, [(point, multiplicity)]) or None
    when the fiber meets infinity."""
    base = c.field
    roots, residual = fiber(c, BACKWARD, b, ext_bound=1, rng=rng)
    L = 1
    for d in residual:
        L = L * d // math.gcd(L, d)
    E = _ambient_for(base, L)
    if E != base:
        emb = embedding(base, E)
        b = ProjectivePoint.finite(E, emb(b.value()))
        roots, residual = fiber(c, BACKWARD, b, ext_bound=1, rng=rng)
    assert residual == [], residual
    if any(p.is_infinity for p, _m in roots):
        return None
    return E, roots


def monomial_trace_oracle(c, exponent, b, rng=None):
    """Sum of x^exponent over the split backward fiber of b, or None when
    the fiber meets infinity."""
    split = splitting_fiber(c, b, rng=rng)
    if split is None:
        return None
    E, roots = split
    total = E.zero
    for p, m in roots:
        total = total + E.element(m) * p.value() ** exponent
    return total


def walk_count_oracle(c, vertices, x, y, n, rng=None):
    """Directed walks from x to y in n steps inside a certified set, by
    plain recursion on forward fibers (independent of adjacency powers)."""
    vset = {v.key(): v for v in vertices}
    succ = {}
    for v in vertices:
        roots, _residual = fiber(c, FORWARD, v, ext_bound=1, rng=rng)
        succ[v.key()] = [(p, m) for p, m in roots if p.key() in vset]
    memo = {}

    def walks(v, k):
        if k == 0:
            return 1 if v == y else 0
        key = (v.key(), k)
        if key not in memo:
            memo[key] = sum(m * walks(t, k - 1) for t, m in succ[v.key()])
        return memo[key]

    return walks(x, n)
