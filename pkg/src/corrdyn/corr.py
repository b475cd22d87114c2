"""Self-correspondences on the projective line.

A correspondence is stored as a divisor on P^1 x P^1: a multiset of
normalized squarefree bivariate components with multiplicities.  A point
(x, y) on a component is an edge x -> y of the associated graph; the first
projection degree d1 counts edges out of a generic vertex, the second d2
counts edges in.  Correspondences coming from a rational map f (graph of f,
or its transpose) carry a tag that enables exact fast paths.
"""

from __future__ import annotations

import logging

from .errors import (
    DegenerateComponent,
    FieldMismatch,
    Inseparable,
    NotAnEdge,
    NotMorphismType,
    ZeroPolynomial,
)
from .fields import Field
from .points import ProjectivePoint
from .poly import (
    BinaryForm,
    BiPoly,
    RationalFunction,
    _power_table,
    bipoly_factor,
    bipoly_gcd,
    bipoly_squarefree,
    embed_bipoly,
    resultant,
    roots_p1,
)

logger = logging.getLogger(__name__)

FORWARD = "forward"
BACKWARD = "backward"


class EdgeLocal:
    """Local data of one edge x -> y: ramification indices of the two
    projections at the edge, branch-summed over components through (x, y)."""

    __slots__ = ("source", "target", "e1", "e2")

    def __init__(self, source, target, e1, e2):
        self.source = source
        self.target = target
        self.e1 = e1
        self.e2 = e2

    @property
    def etale(self) -> bool:
        return self.e1 == 1 and self.e2 == 1

    @property
    def equiramified(self) -> bool:
        return self.e1 == self.e2

    @property
    def ram_increasing(self) -> bool:
        return self.e1 <= self.e2

    @property
    def ram_decreasing(self) -> bool:
        return self.e1 >= self.e2

    @property
    def possibly_singular(self) -> bool:
        return self.e1 > 1 and self.e2 > 1

    def __repr__(self):
        return (
            f"EdgeLocal({self.source} -> {self.target}, "
            f"e1={self.e1}, e2={self.e2})"
        )


class Correspondence:
    """Immutable multiset of components with cached bidegree."""

    __slots__ = ("field", "components", "morphism", "d1", "d2")

    def __init__(self, field: Field, components, morphism=None):
        comps = tuple(sorted(components, key=lambda cm: cm[0].key()))
        d1 = sum(m * c.deg_y for c, m in comps)
        d2 = sum(m * c.deg_x for c, m in comps)
        self.field = field
        self.components = comps
        self.morphism = morphism  # None or (orientation, RationalFunction)
        self.d1 = d1
        self.d2 = d2

    @property
    def bidegree(self):
        return (self.d1, self.d2)

    def component_strings(self):
        return [(c.to_str(), m) for c, m in self.components]

    def multiset_key(self):
        return tuple((c.key(), m) for c, m in self.components)

    def __eq__(self, other):
        if not isinstance(other, Correspondence):
            return NotImplemented
        return self.field == other.field and self.multiset_key() == other.multiset_key()

    def __hash__(self):
        return hash((self.field, self.multiset_key()))

    def __repr__(self):
        parts = []
        for c, m in self.components:
            s = f"({c.to_str()})"
            if m > 1:
                s += f"^{m}"
            parts.append(s)
        return f"Correspondence[{self.d1},{self.d2}]({' * '.join(parts)})"


def _validate_component(comp: BiPoly):
    """Reject factors with a degenerate or inseparable irreducible part.

    Finite-field factors are squarefree but possibly reducible, so the
    checks must see through products: a sub-factor constant in one
    variable divides the content in that variable, and an inseparable
    sub-factor divides gcd(comp, d comp/d var)."""
    if comp.deg_x < 1 or comp.deg_y < 1:
        raise DegenerateComponent(
            f"component {comp.to_str()} is constant in one variable"
        )
    for var in ("x", "y"):
        if comp.content(var).degree >= 1:
            raise DegenerateComponent(
                f"component {comp.to_str()} has a factor constant in {var}"
            )
    for var in ("x", "y"):
        d = comp.derivative(var)
        if d.is_zero or not bipoly_gcd(comp, d).is_constant:
            raise Inseparable(
                f"component {comp.to_str()} is inseparable in {var}"
            )


def build(field: Field, F: BiPoly = None, f: RationalFunction = None) -> Correspondence:
    """Build a correspondence from a bivariate polynomial or a rational map.

    Polynomial input is squarefree-decomposed into normalized components
    with multiplicities.  Map input produces the graph of f: the component
    y*den(x) - num(x), tagged so that the forward step at x is f(x).
    """
    if (F is None) == (f is None):
        raise ZeroPolynomial("exactly one of F, f must be given")
    if f is not None:
        if f.field != field:
            raise FieldMismatch("map defined over a different field")
        if f.is_constant:
            raise DegenerateComponent("constant map has no graph correspondence")
        terms = {}
        for i, c in enumerate(f.den.coeffs):
            terms[(i, 1)] = c
        for i, c in enumerate(f.num.coeffs):
            terms[(i, 0)] = terms.get((i, 0), field.zero) - c
        comp = BiPoly(field, terms)
        comp = comp.normalized()[1]
        _validate_component(comp)
        return Correspondence(field, [(comp, 1)], morphism=(FORWARD, f))
    if F.field != field:
        raise FieldMismatch("polynomial defined over a different field")
    if F.is_zero or F.deg_x < 1 or F.deg_y < 1:
        raise DegenerateComponent("input must be nonconstant in both variables")
    _, factors = bipoly_factor(F)
    comps = []
    for g, m in factors:
        _validate_component(g)
        comps.append((g, m))
    return Correspondence(field, comps)


def transpose(c: Correspondence) -> Correspondence:
    comps = []
    for g, m in c.components:
        comps.append((g.swap().normalized()[1], m))
    morphism = None
    if c.morphism is not None:
        orient, f = c.morphism
        morphism = (BACKWARD if orient == FORWARD else FORWARD, f)
    return Correspondence(c.field, comps, morphism=morphism)


def corr_sum(a: Correspondence, b: Correspondence) -> Correspondence:
    if a.field != b.field:
        raise FieldMismatch("sum of correspondences over different fields")
    acc = {}
    for g, m in a.components + b.components:
        acc[g] = acc.get(g, 0) + m
    return Correspondence(a.field, list(acc.items()))


def as_morphism(c: Correspondence):
    """(orientation, f) for a tagged graph-of-map correspondence."""
    if c.morphism is None:
        raise NotMorphismType(
            "operation requires a correspondence built from a rational map"
        )
    return c.morphism


def compose(outer: Correspondence, inner: Correspondence) -> Correspondence:
    """Composition: edges x -> z with some y such that x -> y in inner and
    y -> z in outer.  Map fast path: graph(f) after graph(g) = graph(f o g).
    """
    if outer.field != inner.field:
        raise FieldMismatch("composition of correspondences over different fields")
    field = outer.field
    if outer.morphism is not None and inner.morphism is not None:
        o_orient, fo = outer.morphism
        i_orient, fi = inner.morphism
        if o_orient == FORWARD and i_orient == FORWARD:
            return build(field, f=fo.compose(fi))
        if o_orient == BACKWARD and i_orient == BACKWARD:
            return transpose(build(field, f=fi.compose(fo)))
    acc = {}
    for gi, mi in inner.components:
        for go, mo in outer.components:
            res = resultant(gi, go, "y", chain=True)
            if res.is_zero:
                raise ZeroPolynomial(
                    "vanishing composition resultant; components share a factor"
                )
            if res.is_constant:
                logger.warning(
                    "composition of %s and %s collapsed to a constant; dropped",
                    gi.to_str(),
                    go.to_str(),
                )
                continue
            _, factors = bipoly_factor(res)
            for h, mh in factors:
                # elimination introduces extraneous single-variable factors
                # (leading-coefficient contributions); strip them
                while True:
                    cy = h.content("y")
                    if cy.degree >= 1:
                        h = h.exact_div(BiPoly.from_poly(cy, "x"))
                        continue
                    cx = h.content("x")
                    if cx.degree >= 1:
                        h = h.exact_div(BiPoly.from_poly(cx, "y"))
                        continue
                    break
                if h.is_constant:
                    logger.warning(
                        "collapsed component %s dropped from composition",
                        h.to_str(),
                    )
                    continue
                h = h.normalized()[1]
                acc[h] = acc.get(h, 0) + mi * mo * mh
    return Correspondence(field, list(acc.items()))


def _substituted_form(comp: BiPoly, pt: ProjectivePoint, direction: str) -> BinaryForm:
    """Fiber form of one component at pt: substitute the source variable and
    read off a binary form in the target variable (degree = component degree
    in that variable, so vanishing leading coefficients encode infinity)."""
    W = comp if direction == FORWARD else comp.swap()
    field = pt.field
    if W.field != field:
        W = embed_bipoly(W, field)
    dx, dy = W.deg_x, W.deg_y
    a = field.element(pt.a)
    b = field.element(pt.b)
    pa = _power_table(a, dx)
    pb = _power_table(b, dx)
    coeffs = [field.zero] * (dy + 1)
    for (i, j), cf in W.terms.items():
        coeffs[j] = coeffs[j] + cf * pa[i] * pb[dx - i]
    return BinaryForm(field, coeffs, dy)


def fiber_form(c: Correspondence, direction: str, pt: ProjectivePoint) -> BinaryForm:
    """Product over components (with multiplicity) of the substituted fiber
    forms; degree d1 for forward, d2 for backward."""
    field = pt.field
    total = BinaryForm(field, [field.one], 0)
    for comp, m in c.components:
        total = total * _substituted_form(comp, pt, direction).power(m)
    return total


def fiber(c: Correspondence, direction: str, pt: ProjectivePoint,
          ext_bound: int = 1, rng=None):
    """Points of the fiber with multiplicities, plus residual factor degrees.

    Forward: the y with (pt, y) on the divisor; backward: the x with
    (x, pt) on it.  Over a finite field, roots are materialized in
    extensions of pt's field up to degree ext_bound; the residual lists the
    degrees of factors beyond the bound (over Q: of all irrational factors).
    """
    form = fiber_form(c, direction, pt)
    return roots_p1(form, ext_bound=ext_bound, rng=rng)


def edge_records(c: Correspondence, x: ProjectivePoint, y: ProjectivePoint):
    """Per-component local data at the plane point (x, y).

    Returns a list of (component index, copies, e1, e2) for each component
    through (x, y); copies is the component multiplicity (parallel edges),
    e1/e2 the one-copy local multiplicities in the two fiber forms.
    """
    out = []
    for idx, (comp, m) in enumerate(c.components):
        e1 = _substituted_form(comp, x, FORWARD).multiplicity_at(y)
        if e1 == 0:
            continue
        e2 = _substituted_form(comp, y, BACKWARD).multiplicity_at(x)
        out.append((idx, m, e1, e2))
    return out


def edge_local(c: Correspondence, x: ProjectivePoint, y: ProjectivePoint) -> EdgeLocal:
    """Aggregate edge data at (x, y); raises NotAnEdge off the divisor."""
    recs = edge_records(c, x, y)
    if not recs:
        raise NotAnEdge(f"({x}, {y}) does not lie on the correspondence")
    e1 = sum(m * a for _, m, a, _ in recs)
    e2 = sum(m * b for _, m, _, b in recs)
    return EdgeLocal(x, y, e1, e2)


def is_symmetric(c: Correspondence) -> bool:
    """True iff the normalized component multiset is swap-invariant."""
    bag = {}
    for g, m in c.components:
        bag[g] = bag.get(g, 0) + m
    for g, m in c.components:
        if bag.get(g.swap().normalized()[1], 0) != m:
            return False
    return True
