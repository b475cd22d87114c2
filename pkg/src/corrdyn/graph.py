"""The directed graph of a self-correspondence: vertices are points of P^1,
edges x -> y are plane points (x, y) on the divisor.

This module explores that graph under explicit budgets: breadth-first
closure under forward and backward fibers (certifying finite complete
sets), classification of a finite set's internal edges (etale or
equiramified or consistently ramified, with integer vertex weights),
adjacency matrices and path counts, exhaustive enumeration over
bounded-degree points of a finite field, structure reports for graphs of
rational maps (cycles, totally ramified cycles, volcanoes), exceptional
sets of maps, and backward kernels.

Over a finite field the search keeps every point inside one growing
ambient extension: when a fiber factor has roots of in-budget degree that
fall outside the current ambient, the ambient is enlarged and the search
restarts there, so point equality stays syntactic.  Over Q, fibers with
irrational points end certification (budget overflow); the base field is
never extended.
"""

from __future__ import annotations

import logging
import math
import random
from collections import deque
from fractions import Fraction

from .corr import (
    BACKWARD,
    FORWARD,
    Correspondence,
    EdgeLocal,
    _substituted_form,
    as_morphism,
    build,
)
from .errors import (
    DegreeOne,
    InfiniteField,
    NotMorphismType,
    SingularEdge,
    VertexNotInSet,
)
from .fields import Field, enumerate_elements, make_extension, make_prime_field, sqrt_fq
from .points import ProjectivePoint, sort_points
from .poly import (
    Poly,
    RationalFunction,
    _powmod,
    embed_bipoly,
    embed_point,
    embed_poly,
    embedding,
    exact_degree_over,
    factor_fq,
    rational_factor_degrees,
    resultant,
    roots_in_field,
    roots_p1,
)

log = logging.getLogger(__name__)

CERTIFIED = "Certified"
BUDGET_EXCEEDED = "BudgetExceeded"

DEFAULT_MAX_EXT = 6
DEFAULT_MAX_SIZE = 512


class SetClassification:
    """Ramification flags over a finite vertex set's internal edges, plus
    positive integer vertex weights when the multiplicative cycle condition
    holds (n_source * e1 = n_target * e2 on every internal edge)."""

    __slots__ = (
        "etale",
        "equiramified",
        "ram_increasing",
        "ram_decreasing",
        "consistently_ramified",
        "weights",
        "possibly_singular_edges",
    )

    def __init__(self, etale, equiramified, ram_increasing, ram_decreasing,
                 consistently_ramified, weights, possibly_singular_edges):
        self.etale = etale
        self.equiramified = equiramified
        self.ram_increasing = ram_increasing
        self.ram_decreasing = ram_decreasing
        self.consistently_ramified = consistently_ramified
        self.weights = weights
        self.possibly_singular_edges = possibly_singular_edges

    def as_dict(self):
        return {
            "etale": self.etale,
            "equiramified": self.equiramified,
            "ram_increasing": self.ram_increasing,
            "ram_decreasing": self.ram_decreasing,
            "consistently_ramified": self.consistently_ramified,
            "possibly_singular_edges": self.possibly_singular_edges,
            "weights": (
                None if self.weights is None
                else {str(p): n for p, n in self.weights.items()}
            ),
        }

    def __repr__(self):
        flags = [
            name for name in
            ("etale", "equiramified", "ram_increasing", "ram_decreasing",
             "consistently_ramified")
            if getattr(self, name)
        ]
        return f"SetClassification({', '.join(flags) or 'none'})"


class CompleteSetReport:
    """Result of one budgeted closure search from a seed point."""

    __slots__ = (
        "status",
        "seed",
        "vertices",
        "edges",
        "classification",
        "budgets",
        "field",
    )

    def __init__(self, status, seed, vertices, edges, classification,
                 budgets, field):
        self.status = status
        self.seed = seed
        self.vertices = tuple(vertices)
        self.edges = tuple(edges)
        self.classification = classification
        self.budgets = budgets
        self.field = field

    @property
    def certified(self):
        return self.status == CERTIFIED

    def __repr__(self):
        vs = ", ".join(str(v) for v in self.vertices[:6])
        if len(self.vertices) > 6:
            vs += ", ..."
        return (
            f"CompleteSetReport({self.status}, {{{vs}}}, "
            f"n={len(self.vertices)})"
        )


class AdjacencyMatrix:
    """Nonnegative integer matrix with entries[i][j] = weighted count of
    edges from vertex j to vertex i; weights are forward multiplicities
    times component multiplicities, so column sums equal the first degree
    when the set holds all fiber points."""

    __slots__ = ("vertices", "entries")

    def __init__(self, vertices, entries):
        self.vertices = tuple(vertices)
        self.entries = [list(r) for r in entries]

    def index(self, pt) -> int:
        for i, v in enumerate(self.vertices):
            if v == pt:
                return i
        raise VertexNotInSet(f"{pt} is not a vertex of the set")

    def power(self, n: int):
        size = len(self.vertices)
        result = [[1 if i == j else 0 for j in range(size)] for i in range(size)]
        base = [row[:] for row in self.entries]
        e = n
        while e:
            if e & 1:
                result = _matmul(result, base)
            base = _matmul(base, base)
            e >>= 1
        return result

    def __add__(self, other):
        if not isinstance(other, AdjacencyMatrix):
            return NotImplemented
        if self.vertices != other.vertices:
            raise VertexNotInSet("adjacency matrices over different vertex lists")
        return AdjacencyMatrix(
            self.vertices,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
        )

    def __eq__(self, other):
        if not isinstance(other, AdjacencyMatrix):
            return NotImplemented
        return self.vertices == other.vertices and self.entries == other.entries

    def __repr__(self):
        return f"AdjacencyMatrix({len(self.vertices)}x{len(self.vertices)})"


def _matmul(a, b):
    n = len(a)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        ai = a[i]
        for k in range(n):
            if ai[k]:
                aik = ai[k]
                bk = b[k]
                row = out[i]
                for j in range(n):
                    row[j] += aik * bk[j]
    return out


# ---------------------------------------------------------------------------
# fiber points inside one ambient field, with growth signalling

_EMBED_CORR_CACHE: dict = {}


def _embedded_components(c: Correspondence, E: Field):
    if E == c.field:
        return c.components
    key = (c, E)
    got = _EMBED_CORR_CACHE.get(key)
    if got is None:
        got = tuple((embed_bipoly(g, E), m) for g, m in c.components)
        _EMBED_CORR_CACHE[key] = got
    return got


def _root_degree_over_base(g: Poly, base: Field, cap: int):
    """Degree over the base field of the roots of g (irreducible over an
    extension of base), or None when it exceeds cap.  Uses the Frobenius
    fixed-point test g | y^(q^m) - y, never materializing a root."""
    qb = base.order
    x = Poly.x(g.field)
    cur = _powmod(x, qb, g)
    m = 1
    while m <= cap:
        if cur == x:
            return m
        cur = _powmod(cur, qb, g)
        m += 1
    return None


def _fiber_neighbors(comps, direction, pt, base: Field, max_ext: int, rng):
    """Distinct fiber points of pt that lie in pt's own field.

    Returns (points, grow, escape).  grow, when set, is a required ambient
    degree over base: some fiber point has in-budget degree but lies
    outside the current field, and the caller should restart in the larger
    ambient.  escape means some fiber point exceeds the extension budget
    (over Q: is irrational)."""
    E = pt.field
    total = None
    for comp, _m in comps:
        f = _substituted_form(comp, pt, direction)
        total = f if total is None else total * f
    pts = []
    if total.infinity_multiplicity() > 0:
        pts.append(ProjectivePoint.infinity(E))
    poly = total.dehomogenize()
    if poly.degree < 1:
        return pts, None, False
    if E.kind == "Q":
        roots, resid = rational_factor_degrees(poly)
        pts.extend(ProjectivePoint.finite(E, r) for r, _ in roots)
        return pts, None, bool(resid)
    a_deg = E.k // base.k
    if poly.degree == 1:
        pts.append(ProjectivePoint.finite(E, -poly.coeff(0) / poly.coeff(1)))
        return pts, None, False
    if poly.degree == 2 and E.p != 2:
        # direct quadratic solve keeps the hot path out of the factoring code
        c2, c1, c0 = poly.coeff(2), poly.coeff(1), poly.coeff(0)
        disc = c1 * c1 - c2 * c0 * 4
        s = sqrt_fq(disc)
        if s is not None:
            inv = (c2 * 2).inverse()
            pts.append(ProjectivePoint.finite(E, (-c1 + s) * inv))
            if not disc.is_zero:
                pts.append(ProjectivePoint.finite(E, (-c1 - s) * inv))
            return pts, None, False
        m = _root_degree_over_base(poly.monic()[1], base, max_ext)
        if m is None:
            return pts, None, True
        return pts, math.lcm(a_deg, m), False
    grow = None
    escape = False
    _, facs = factor_fq(poly, rng)
    for g, _mult in facs:
        if g.degree == 1:
            pts.append(ProjectivePoint.finite(E, -g.coeff(0) / g.coeff(1)))
            continue
        m = _root_degree_over_base(g, base, max_ext)
        if m is None:
            escape = True
        else:
            need = math.lcm(a_deg, m)
            if grow is None or need < grow:
                grow = need
    return pts, grow, escape


def _ambient_for(base: Field, deg_over_base: int) -> Field:
    if deg_over_base == 1:
        return base
    return make_extension(make_prime_field(base.p), base.k * deg_over_base)


# ---------------------------------------------------------------------------
# closure searches


def _closure_search(c, seed, directions, max_ext, max_size, rng, ambient):
    base = c.field
    if base.kind == "Q":
        E = base
    else:
        E = ambient if ambient is not None else seed.field
    while True:
        comps = _embedded_components(c, E)
        seed_e = embed_point(seed, E)
        visited = {seed_e}
        order = [seed_e]
        queue = deque([seed_e])
        exceeded = False
        grow_to = None
        while queue:
            v = queue.popleft()
            for direction in directions:
                pts, grow, escape = _fiber_neighbors(
                    comps, direction, v, base, max_ext, rng
                )
                if grow is not None:
                    grow_to = grow
                    break
                if escape:
                    exceeded = True
                for y in pts:
                    if y not in visited:
                        if len(visited) >= max_size:
                            exceeded = True
                        else:
                            visited.add(y)
                            order.append(y)
                            queue.append(y)
            if grow_to is not None:
                break
        if grow_to is None:
            break
        E = _ambient_for(base, grow_to)
    vertices = sort_points(order)
    records = _internal_edge_records(c, vertices, E, rng)
    classification = _classify_records(records, vertices, strict=False)
    if base.kind == "Q":
        ext_used = 1
    else:
        ext_used = max(
            1 if v.is_infinity else exact_degree_over(v.a, base.k)
            for v in vertices
        )
    budgets = {
        "max_ext": max_ext,
        "max_size": max_size,
        "ext_used": ext_used,
        "size": len(vertices),
    }
    status = BUDGET_EXCEEDED if exceeded else CERTIFIED
    return CompleteSetReport(
        status, seed, vertices, tuple(e for e, _ in records),
        classification, budgets, E,
    )


def complete_set_search(c: Correspondence, seed: ProjectivePoint,
                        max_ext: int = DEFAULT_MAX_EXT,
                        max_size: int = DEFAULT_MAX_SIZE,
                        rng=None, ambient: Field = None) -> CompleteSetReport:
    """Breadth-first closure of seed under forward and backward fibers.

    Certified means the closure completed within budgets and every fiber
    of every vertex splits completely inside the final ambient field, so
    the set is complete over the algebraic closure and is a connected
    component of the graph.  Size overflow, out-of-budget extension
    degrees, and irrational points over Q all yield BudgetExceeded with
    the in-budget truncation.

    Over Q, seeds with an infinite forward orbit make coordinates grow as
    iterated powers; use a small max_size for such searches.
    """
    rng = rng or random.Random(0)
    return _closure_search(
        c, seed, (FORWARD, BACKWARD), max_ext, max_size, rng, ambient
    )


def backward_closure(c: Correspondence, seed: ProjectivePoint,
                     max_ext: int = DEFAULT_MAX_EXT,
                     max_size: int = DEFAULT_MAX_SIZE,
                     rng=None) -> CompleteSetReport:
    """Closure of seed under backward fibers only, with the same budget
    semantics as complete_set_search."""
    rng = rng or random.Random(0)
    return _closure_search(c, seed, (BACKWARD,), max_ext, max_size, rng, None)


# ---------------------------------------------------------------------------
# internal edges and classification


def _e_roots_with_mult(form, rng):
    roots, _resid = roots_p1(form, ext_bound=1, rng=rng)
    return [(p, m) for p, m in roots if p.field == form.field]


def _internal_edge_records(c, vertices, E, rng):
    """One EdgeLocal per component copy for every edge inside the set,
    sorted canonically.  Returns (EdgeLocal, component index) pairs."""
    comps = _embedded_components(c, E)
    vset = set(vertices)
    records = []
    for x in vertices:
        for idx, (comp, mult) in enumerate(comps):
            fwd = _substituted_form(comp, x, FORWARD)
            for y, e1 in _e_roots_with_mult(fwd, rng):
                if y not in vset:
                    continue
                e2 = _substituted_form(comp, y, BACKWARD).multiplicity_at(x)
                for _copy in range(mult):
                    records.append((EdgeLocal(x, y, e1, e2), idx))
    records.sort(key=lambda ri: (
        ri[0].source.key(), ri[0].target.key(), ri[1], ri[0].e1, ri[0].e2
    ))
    return records


def _classify_records(records, vertices, strict):
    if strict:
        for e, _ in records:
            if e.possibly_singular:
                raise SingularEdge(
                    f"edge {e.source} -> {e.target} has e1={e.e1} and "
                    f"e2={e.e2}; branch indices may be merged"
                )
    edges = [e for e, _ in records]
    etale = all(e.etale for e in edges)
    equi = all(e.equiramified for e in edges)
    inc = all(e.ram_increasing for e in edges)
    dec = all(e.ram_decreasing for e in edges)
    singular = sum(1 for e in edges if e.possibly_singular)
    # weight propagation along an undirected spanning forest; revisited
    # edges then check the multiplicative cycle condition
    adj = {v: [] for v in vertices}
    for e in edges:
        adj[e.source].append((e.target, Fraction(e.e1, e.e2)))
        adj[e.target].append((e.source, Fraction(e.e2, e.e1)))
    weights = {}
    consistent = True
    for start in vertices:
        if start in weights or not consistent:
            continue
        component = [start]
        weights[start] = Fraction(1)
        queue = deque([start])
        while queue and consistent:
            v = queue.popleft()
            for w, ratio in adj[v]:
                target = weights[v] * ratio
                if w in weights:
                    if weights[w] != target:
                        consistent = False
                        break
                else:
                    weights[w] = target
                    component.append(w)
                    queue.append(w)
        if not consistent:
            break
        scale = math.lcm(*(weights[v].denominator for v in component))
        scaled = [int(weights[v] * scale) for v in component]
        g = math.gcd(*scaled)
        for v, s in zip(component, scaled):
            weights[v] = s // g
    weights = None if not consistent else {v: weights[v] for v in vertices}
    return SetClassification(etale, equi, inc, dec, consistent, weights, singular)


def classify_set(c: Correspondence, S, strict: bool = False,
                 rng=None) -> SetClassification:
    """Classify the internal edges of a finite set of points (all in one
    field).  In strict mode an edge where both local indices exceed 1
    raises SingularEdge: at a singular plane point the branch-summed
    indices may merge several edges, so the flags could be unreliable."""
    rng = rng or random.Random(0)
    vertices = sort_points(S)
    if not vertices:
        return _classify_records([], [], strict)
    E = vertices[0].field
    records = _internal_edge_records(c, vertices, E, rng)
    return _classify_records(records, vertices, strict)


# ---------------------------------------------------------------------------
# adjacency and path counts


def adjacency_matrix(c: Correspondence, S, rng=None) -> AdjacencyMatrix:
    rng = rng or random.Random(0)
    vertices = sort_points(S)
    index = {v: i for i, v in enumerate(vertices)}
    entries = [[0] * len(vertices) for _ in range(len(vertices))]
    if vertices:
        E = vertices[0].field
        for e, _idx in _internal_edge_records(c, vertices, E, rng):
            entries[index[e.target]][index[e.source]] += e.e1
    return AdjacencyMatrix(vertices, entries)


def path_count(c: Correspondence, S, x: ProjectivePoint, y: ProjectivePoint,
               n: int, rng=None) -> int:
    """Number of directed length-n paths from x to y inside S, counting
    edge multiplicities: the (y, x) entry of the n-th power of the
    adjacency matrix."""
    mat = adjacency_matrix(c, S, rng=rng)
    ix = mat.index(x)
    iy = mat.index(y)
    return mat.power(n)[iy][ix]


# ---------------------------------------------------------------------------
# exhaustive enumeration over bounded-degree points


def _universe_points(base: Field, K: int):
    """Points of P^1 of degree <= K over base, realized inside the single
    ambient extension of degree lcm(1..K): finite points in canonical
    element order, then infinity."""
    L = 1
    for m in range(2, K + 1):
        L = math.lcm(L, m)
    E = _ambient_for(base, L)
    pts = []
    for a in enumerate_elements(E):
        if exact_degree_over(a, base.k) <= K:
            pts.append(ProjectivePoint.finite(E, a))
    pts.append(ProjectivePoint.infinity(E))
    return E, pts


def enumerate_complete_sets(c: Correspondence, K: int,
                            max_size: int = DEFAULT_MAX_SIZE,
                            rng=None) -> list:
    """Closure search from every point of degree <= K over the base field;
    one report per discovered component, certified or not.  The ambient
    field is fixed at degree lcm(1..K), which already holds every point of
    every in-budget fiber, so searches never restart."""
    if c.field.kind == "Q":
        raise InfiniteField("enumeration needs a finite base field")
    if K <= 0:
        return []
    rng = rng or random.Random(0)
    E, universe = _universe_points(c.field, K)
    seen = set()
    reports = []
    for pt in universe:
        if pt in seen:
            continue
        rep = complete_set_search(
            c, pt, max_ext=K, max_size=max_size, rng=rng, ambient=E
        )
        seen.update(rep.vertices)
        reports.append(rep)
    return reports


# ---------------------------------------------------------------------------
# structure of graphs of rational maps


def _eval_map(num: Poly, den: Poly, pt: ProjectivePoint) -> ProjectivePoint:
    field = pt.field
    if pt.is_infinity:
        dn, dd = num.degree, den.degree
        if dn > dd:
            return ProjectivePoint.infinity(field)
        if dn < dd:
            return ProjectivePoint.finite(field, field.zero)
        return ProjectivePoint.finite(field, num.lead() / den.lead())
    d = den.eval(pt.a)
    if d.is_zero:
        return ProjectivePoint.infinity(field)
    return ProjectivePoint.finite(field, num.eval(pt.a) / d)


def _try_volcano(c, cycle0, E, d, depth, max_ext, rng):
    """One volcano attempt in a fixed ambient.  Returns ('grow', degree)
    when a backward fiber needs a larger ambient, else ('done', valid,
    levels, depth_checked) with valid in {True, False, None}."""
    base = c.field
    comps = _embedded_components(c, E)
    cycle = [embed_point(p, E) for p in cycle0]
    known = set(cycle)
    levels = [list(cycle)]
    checked = 0
    for level in range(1, depth + 1):
        fresh_level = []
        for v in levels[-1]:
            pts, grow, escape = _fiber_neighbors(
                comps, BACKWARD, v, base, max_ext, rng
            )
            if grow is not None:
                return ("grow", grow)
            if escape:
                return ("done", None, levels, checked)
            fresh = [p for p in pts if p not in known]
            # the only previously-known backward neighbor is the cycle
            # predecessor, and only while processing the cycle level
            expected_known = 1 if level == 1 else 0
            if len(pts) != d or len(pts) - len(fresh) != expected_known:
                return ("done", False, levels, checked)
            fresh_level.extend(fresh)
        fresh_level = sort_points(fresh_level)
        levels.append(fresh_level)
        known.update(fresh_level)
        checked = level
    return ("done", True, levels, checked)


def morphism_graph_classify(c: Correspondence, seed: ProjectivePoint,
                            depth: int = 3,
                            max_ext: int = DEFAULT_MAX_EXT,
                            max_size: int = DEFAULT_MAX_SIZE,
                            rng=None) -> dict:
    """Structure of the seed's component in the functional graph of the
    underlying rational map: the unique forward cycle, total ramification
    along it (the criterion for the component to be a finite complete
    set), and for etale cycles a level-by-level volcano check of the
    backward tree down to the given depth."""
    rng = rng or random.Random(0)
    orient, f = as_morphism(c)
    if orient != FORWARD:
        raise NotMorphismType(
            "graph structure analysis needs the forward graph of a map; "
            "transpose the correspondence first"
        )
    d = f.degree
    E = seed.field
    num = embed_poly(f.num, E)
    den = embed_poly(f.den, E)
    orbit = [embed_point(seed, E)]
    index = {orbit[0]: 0}
    cycle = None
    tail = None
    while len(orbit) <= max_size:
        nxt = _eval_map(num, den, orbit[-1])
        if nxt in index:
            tail = index[nxt]
            cycle = orbit[tail:]
            break
        index[nxt] = len(orbit)
        orbit.append(nxt)
    report = {
        "map_degree": d,
        "cycle": cycle,
        "cycle_length": None if cycle is None else len(cycle),
        "tail_length": tail,
        "cycle_totally_ramified": None,
        "finite_complete_criterion": None,
        "etale_cycle": None,
        "volcano_valid": None,
        "volcano_type": None,
        "volcano_depth_checked": 0,
        "levels": None,
    }
    if cycle is None:
        return report
    comp = _embedded_components(c, E)[0][0]
    tr_flags = []
    etale_flags = []
    for v in cycle:
        w = _eval_map(num, den, v)
        e1 = _substituted_form(comp, v, FORWARD).multiplicity_at(w)
        e2 = _substituted_form(comp, w, BACKWARD).multiplicity_at(v)
        tr_flags.append(e2 == d)
        etale_flags.append(e1 == 1 and e2 == 1)
    report["cycle_totally_ramified"] = all(tr_flags)
    report["finite_complete_criterion"] = all(tr_flags)
    report["etale_cycle"] = all(etale_flags)
    if not all(etale_flags) or depth < 1:
        return report
    while True:
        out = _try_volcano(c, cycle, E, d, depth, max_ext, rng)
        if out[0] != "grow":
            break
        E = _ambient_for(c.field, out[1])
    _tag, valid, levels, checked = out
    report["volcano_valid"] = valid
    report["volcano_depth_checked"] = checked
    report["levels"] = levels
    report["cycle"] = levels[0]
    if valid:
        report["volcano_type"] = (len(cycle), d)
    return report


# ---------------------------------------------------------------------------
# exceptional sets of rational maps


def exceptional_set_morphism(f: RationalFunction, field: Field, rng=None):
    """Union of the finite complete sets of the graph of f (so of the
    totally ramified cycles), for deg f >= 2; always at most two points.

    Candidate points are the critical points of f that are rational over
    the field, plus infinity; over a finite field a quadratic-extension
    sweep makes the answer exact, since the set is stable under the Galois
    action and therefore consists of points of degree at most 2.  Over Q
    the same degree bound holds but only rational members are reported."""
    rng = rng or random.Random(0)
    if f.degree < 2:
        raise DegreeOne("exceptional sets need a map of degree at least 2")
    c = build(field, f=f)
    d = f.degree
    wron = f.num.derivative() * f.den - f.num * f.den.derivative()
    fields_to_try = [field]
    if field.kind == "F":
        fields_to_try.append(_ambient_for(field, 2))
    totally_ramified = {}
    for F in fields_to_try:
        w = embed_poly(wron, F)
        candidates = [ProjectivePoint.infinity(F)]
        candidates.extend(
            ProjectivePoint.finite(F, r) for r, _m in roots_in_field(w, rng)
        )
        comp = _embedded_components(c, F)[0][0]
        num = embed_poly(f.num, F)
        den = embed_poly(f.den, F)
        tr = set()
        for pt in candidates:
            img = _eval_map(num, den, pt)
            if _substituted_form(comp, img, BACKWARD).multiplicity_at(pt) == d:
                tr.add(pt)
        totally_ramified[F] = tr
    result = set()
    for F, tr in totally_ramified.items():
        num = embed_poly(f.num, F)
        den = embed_poly(f.den, F)
        for start in sort_points(tr):
            path = [start]
            seen = {start: 0}
            while True:
                nxt = _eval_map(num, den, path[-1])
                if nxt not in tr:
                    break
                if nxt in seen:
                    result.update(path[seen[nxt]:])
                    break
                seen[nxt] = len(path)
                path.append(nxt)
    final = set()
    for pt in result:
        if pt.field == field:
            final.add(pt)
        elif pt.is_infinity:
            final.add(ProjectivePoint.infinity(field))
        elif exact_degree_over(pt.a, field.k) == 1:
            final.add(ProjectivePoint.finite(field, _project_down(pt.a, field)))
        else:
            final.add(pt)
    out = sort_points(final)
    assert len(out) <= 2, f"exceptional set {out} has more than two points"
    return out


def _project_down(elem, base: Field):
    """Base-field element mapping to elem under the canonical embedding;
    elem must have degree 1 over base."""
    fn = embedding(base, elem.field)
    for cand_int in range(base.order):
        cand = base.element(_int_to_vec(cand_int, base))
        if fn(cand) == elem:
            return cand
    raise VertexNotInSet("element does not descend to the base field")


def _int_to_vec(n, field):
    if field.k == 1:
        return n
    vec = []
    m = n
    for _ in range(field.k):
        vec.append(m % field.p)
        m //= field.p
    return vec


# ---------------------------------------------------------------------------
# backward kernels


def scholium_check(c: Correspondence, report: CompleteSetReport,
                   rng=None) -> dict:
    """Consequence check on a certified finite backward-complete set: when
    d1 <= d2 and every internal edge has e1 >= e2, the set must also be
    forward-complete with e1 = e2 throughout, and the bidegree must be
    balanced."""
    rng = rng or random.Random(0)
    applies = (
        report.certified
        and len(report.vertices) > 0
        and c.d1 <= c.d2
        and all(e.ram_decreasing for e in report.edges)
    )
    out = {
        "applies": applies,
        "forward_complete": None,
        "equiramified": None,
        "balanced": None,
    }
    if not applies:
        return out
    E = report.field
    comps = _embedded_components(c, E)
    vset = set(report.vertices)
    forward_ok = True
    for v in report.vertices:
        pts, grow, escape = _fiber_neighbors(
            comps, FORWARD, v, c.field, report.budgets["max_ext"], rng
        )
        if grow is not None or escape or any(p not in vset for p in pts):
            forward_ok = False
            break
    out["forward_complete"] = forward_ok
    out["equiramified"] = all(e.equiramified for e in report.edges)
    out["balanced"] = c.d1 == c.d2
    return out


def backward_kernel_search(c: Correspondence,
                           max_ext: int = DEFAULT_MAX_EXT,
                           max_size: int = DEFAULT_MAX_SIZE,
                           rng=None):
    """Union of the certified finite backward-complete sets found from a
    finite candidate pool: backward-ramification values (roots of the
    discriminant of each component in its first variable), fiber
    degree-drop values (roots of leading coefficients), infinity, short
    cycles of the backward map when it is a morphism, and a two-step
    forward sweep of all of those."""
    rng = rng or random.Random(0)
    field = c.field
    pool = {ProjectivePoint.infinity(field)}
    for comp, _m in c.components:
        dfx = comp.derivative("x")
        if not dfx.is_zero:
            res = resultant(comp, dfx, var="x")
            if not res.is_zero:
                disc = res.coeff_polys("x")[0]
                for r, _mm in roots_in_field(disc, rng):
                    pool.add(ProjectivePoint.finite(field, r))
        lead = comp.coeff_polys("x")[-1]
        if lead.degree >= 1:
            for r, _mm in roots_in_field(lead, rng):
                pool.add(ProjectivePoint.finite(field, r))
    if c.d2 == 1:
        # the backward direction is itself a morphism; add its short cycles
        comp = c.components[0][0]
        cps = comp.coeff_polys("x")
        g = RationalFunction(-cps[0], cps[1])
        iterate = g
        for _n in range(3):
            fix = iterate.num - Poly.x(field) * iterate.den
            if not fix.is_zero:
                for r, _mm in roots_in_field(fix, rng):
                    pool.add(ProjectivePoint.finite(field, r))
            iterate = g.compose(iterate)
    comps = c.components
    frontier = list(pool)
    for _step in range(2):
        new = []
        for pt in frontier:
            pts, _grow, _escape = _fiber_neighbors(
                comps, FORWARD, pt, field, 1, rng
            )
            for y in pts:
                if y not in pool:
                    pool.add(y)
                    new.append(y)
        frontier = new
    kernel = set()
    for pt in sort_points(pool):
        if pt in kernel:
            continue
        rep = backward_closure(c, pt, max_ext=max_ext, max_size=max_size,
                               rng=rng)
        if not rep.certified:
            continue
        check = scholium_check(c, rep, rng=rng)
        if check["applies"] and not (
            check["forward_complete"] and check["equiramified"]
            and check["balanced"]
        ):
            log.warning(
                "backward-complete set %s fails the expected "
                "forward-completeness consequence: %s",
                [str(v) for v in rep.vertices], check,
            )
        kernel.update(rep.vertices)
    return sort_points(kernel)


# ---------------------------------------------------------------------------
# serialization


def report_to_json(report: CompleteSetReport) -> dict:
    return {
        "status": report.status,
        "vertices": [str(v) for v in report.vertices],
        "edges": [
            {
                "source": str(e.source),
                "target": str(e.target),
                "e1": e.e1,
                "e2": e.e2,
            }
            for e in report.edges
        ],
        "classification": report.classification.as_dict(),
        "budgets": dict(report.budgets),
    }


def report_to_dot(report: CompleteSetReport, name: str = "complete_set") -> str:
    lines = [f"digraph {name} {{"]
    for v in report.vertices:
        lines.append(f'  "{v}";')
    for e in report.edges:
        lines.append(
            f'  "{e.source}" -> "{e.target}" [label="{e.e1},{e.e2}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
