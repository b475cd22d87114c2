"""Trace action of a correspondence on rational functions.

A self-correspondence sends a function g to the function whose value at b
is the multiplicity-weighted sum of g over the points a with (a, b) on the
divisor.  Everything here computes that action exactly: pointwise on any
rational function (as a trace over the residue ring of each component),
as monomial power sums via Newton's identities, and as a matrix on the
finite-dimensional spaces of functions with poles confined to a fixed
support.  On top of the matrix sit the minimal-polynomial probe for a
single annihilating polynomial, a path-count falsification test, and a
splitting of the pole filtration against a disjoint vanishing support.
"""

import random
from fractions import Fraction

from .corr import FORWARD, Correspondence, as_morphism, edge_records, fiber
from .errors import (
    FieldMismatch,
    NonRationalPoint,
    NotDisjoint,
    NotForwardComplete,
    NotMorphismType,
    NotRamificationIncreasing,
    StabilityViolation,
    TraceUndefined,
    ZeroPolynomial,
)
from .graph import adjacency_matrix
from . import linalg
from .points import ProjectivePoint, sort_points
from .poly import Poly, RationalFunction


# ---------------------------------------------------------------------------
# polynomials in the first variable over the rational functions in the second
# ---------------------------------------------------------------------------
# Ascending coefficient lists of RationalFunction; just enough arithmetic for
# remainders by a monic modulus and modular inverses.


def _rf_zero(field):
    return RationalFunction.constant(field, 0)


def _rf_one(field):
    return RationalFunction.constant(field, 1)


def _rx_trim(cs):
    while cs and cs[-1].is_zero:
        cs.pop()
    return cs


def _rx_sub(a, b):
    out = []
    for i in range(max(len(a), len(b))):
        if i < len(a) and i < len(b):
            out.append(a[i] - b[i])
        elif i < len(a):
            out.append(a[i])
        else:
            out.append(-b[i])
    return _rx_trim(out)


def _rx_scale(a, s):
    return _rx_trim([c * s for c in a])


def _rx_mul(a, b):
    if not a or not b:
        return []
    field = a[0].field
    out = [_rf_zero(field) for _ in range(len(a) + len(b) - 1)]
    for i, ca in enumerate(a):
        if ca.is_zero:
            continue
        for j, cb in enumerate(b):
            out[i + j] = out[i + j] + ca * cb
    return _rx_trim(out)


def _rx_divmod(a, b):
    field = b[-1].field
    q = [_rf_zero(field)] * max(0, len(a) - len(b) + 1)
    r = list(a)
    inv = _rf_one(field) / b[-1]
    d = len(b) - 1
    while r and len(r) - 1 >= d:
        c = r[-1] * inv
        shift = len(r) - 1 - d
        q[shift] = c
        for i, bc in enumerate(b):
            r[shift + i] = r[shift + i] - c * bc
        while r and r[-1].is_zero:
            r.pop()
    return _rx_trim(q), r


def _rx_rem(a, f):
    return _rx_divmod(a, f)[1]


def _rx_inv_mod(b, f):
    field = f[-1].field
    r0, s0 = list(f), []
    r1, s1 = _rx_rem(list(b), f), [_rf_one(field)]
    while r1:
        q, r2 = _rx_divmod(r0, r1)
        s2 = _rx_sub(s0, _rx_mul(q, s1))
        r0, s0, r1, s1 = r1, s1, r2, s2
    if len(r0) != 1:
        raise TraceUndefined("denominator vanishes along a fiber component")
    return _rx_rem(_rx_scale(s0, _rf_one(field) / r0[0]), f)


def _monic_in_x(comp):
    """Component coefficients, monic in the first variable over the
    rational functions in the second."""
    cps = comp.coeff_polys("x")
    n = len(cps) - 1
    if n == 0:
        raise TraceUndefined("component does not involve the first variable")
    lead = cps[n]
    out = [RationalFunction(cp, lead) for cp in cps[:n]]
    out.append(_rf_one(comp.field))
    return out


def _component_trace(comp, f):
    field = f.field
    F = _monic_in_x(comp)
    n = len(F) - 1
    num = _rx_rem([RationalFunction.constant(field, co) for co in f.num.coeffs], F)
    den = _rx_rem([RationalFunction.constant(field, co) for co in f.den.coeffs], F)
    g = _rx_rem(_rx_mul(num, _rx_inv_mod(den, F)), F)
    trace = _rf_zero(field)
    cur = list(g)
    for j in range(n):
        if j < len(cur):
            trace = trace + cur[j]
        if j < n - 1:
            cur = _rx_rem([_rf_zero(field)] + cur, F)
    return trace


def td_apply(c: Correspondence, f) -> RationalFunction:
    """Image of a rational function under the trace action.

    The value at b is the multiplicity-weighted sum of f over the points a
    with (a, b) on the divisor; per component this is the exact trace of
    multiplication by f on the residue ring of the component, so no roots
    are ever materialized.  For the divisor of a morphism u the action is
    g -> sum of g over the u-preimages; for its transpose, g -> g o u.
    """
    if isinstance(f, Poly):
        f = RationalFunction.from_poly(f)
    if f.field != c.field:
        raise FieldMismatch("function and correspondence over different fields")
    total = _rf_zero(c.field)
    for comp, mult in c.components:
        total = total + mult * _component_trace(comp, f)
    return total


def td_power_sums(c: Correspondence, N: int) -> list:
    """Traces of the monomials 1, x, ..., x^N.

    Newton's identities on the elementary symmetric functions read off the
    component coefficients: an independent route to td_apply on monomials
    with no division by integers, hence valid in any characteristic.
    """
    if N < 0:
        raise ValueError("negative power-sum count")
    field = c.field
    sums = [_rf_zero(field) for _ in range(N + 1)]
    for comp, mult in c.components:
        cps = comp.coeff_polys("x")
        n = len(cps) - 1
        if n == 0:
            raise TraceUndefined("component does not involve the first variable")
        lead = cps[n]
        elem = [None]
        for i in range(1, n + 1):
            e = RationalFunction(cps[n - i], lead)
            elem.append(-e if i % 2 else e)
        p = [RationalFunction.constant(field, n)]
        for k in range(1, N + 1):
            acc = _rf_zero(field)
            for i in range(1, min(k - 1, n) + 1):
                term = elem[i] * p[k - i]
                acc = acc + term if i % 2 else acc - term
            if k <= n:
                term = elem[k] * k
                acc = acc + term if k % 2 else acc - term
            p.append(acc)
        for k in range(N + 1):
            sums[k] = sums[k] + mult * p[k]
    return sums


# ---------------------------------------------------------------------------
# the filtration by pole order over a fixed support
# ---------------------------------------------------------------------------


def _unique_sorted(points):
    out = []
    seen = set()
    for pt in sort_points(points):
        if pt.key() not in seen:
            seen.add(pt.key())
            out.append(pt)
    return out


def filtration_basis(field, support, n):
    """Ordered basis of the functions with poles confined to the support of
    order at most n: the constant 1, then powers of x when the support
    holds the point at infinity, then inverse powers at each finite point.

    Returns (descriptors, functions); descriptors are ("const",),
    ("pow", j) or ("pole", point, j) and fix the coordinate order.
    """
    descrs = [("const",)]
    fns = [_rf_one(field)]
    pts = _unique_sorted(support)
    finite = [p for p in pts if not p.is_infinity]
    if any(p.is_infinity for p in pts):
        xvar = RationalFunction.x(field)
        cur = _rf_one(field)
        for j in range(1, n + 1):
            cur = cur * xvar
            descrs.append(("pow", j))
            fns.append(cur)
    for pt in finite:
        lin = Poly(field, [-pt.value(), field.one])
        base = RationalFunction(Poly.one(field), lin)
        cur = _rf_one(field)
        for j in range(1, n + 1):
            cur = cur * base
            descrs.append(("pole", pt, j))
            fns.append(cur)
    return descrs, fns


def _series_quotient(num, den, count):
    """First `count` power-series coefficients of num/den at 0; needs
    den(0) nonzero."""
    binv = den.coeff(0).inverse()
    out = []
    for t in range(count):
        acc = num.coeff(t)
        for i in range(1, min(t, den.degree) + 1):
            acc = acc - den.coeff(i) * out[t - i]
        out.append(acc * binv)
    return out


def _filtration_coordinates(h, descrs, fns, n, field):
    """Coordinates of h in the filtration basis; StabilityViolation when h
    has a pole outside the support or of order above the level."""
    has_inf = any(d[0] == "pow" for d in descrs)
    finite_pts = [d[1] for d in descrs if d[0] == "pole" and d[2] == 1]
    coords = {}
    poly_part, rem = h.num.divmod(h.den)
    if poly_part.degree >= 1:
        inf = ProjectivePoint.infinity(field)
        if not has_inf:
            raise StabilityViolation("pole at infinity outside the support", pole=inf)
        if poly_part.degree > n:
            raise StabilityViolation("pole order at infinity above the level", pole=inf)
        for j in range(1, poly_part.degree + 1):
            coords[("pow", j)] = poly_part.coeff(j)
    coords[("const",)] = poly_part.coeff(0)
    den = h.den
    if den.degree >= 1:
        accounted = 0
        for pt in finite_pts:
            a = pt.value()
            m = den.root_multiplicity(a)
            if m == 0:
                continue
            if m > n:
                raise StabilityViolation("pole order above the level", pole=pt)
            accounted += m
            lin = Poly(field, [-a, field.one])
            cof = den.exact_div(lin ** m)
            shift = Poly(field, [a, field.one])
            ser = _series_quotient(rem.compose(shift), cof.compose(shift), m)
            for t in range(m):
                coords[("pole", pt, m - t)] = ser[t]
        if accounted < den.degree:
            raise StabilityViolation("pole outside the support")
    vector = [coords.get(d, field.zero) for d in descrs]
    check = _rf_zero(field)
    for coeff, g in zip(vector, fns):
        if not coeff.is_zero:
            check = check + coeff * g
    if check != h:
        raise StabilityViolation("expansion failed to reassemble the image")
    return vector


def _basis_label(descr):
    kind = descr[0]
    if kind == "const":
        return "1"
    if kind == "pow":
        return "x" if descr[1] == 1 else f"x^{descr[1]}"
    _, pt, j = descr
    a = str(pt.value())
    core = f"x-({a})" if any(ch in a for ch in "+-*/") else f"x-{a}"
    return f"({core})^-{j}"


class FiltrationOperator:
    """Exact matrix of the trace action on a filtered function space."""

    __slots__ = (
        "field",
        "support",
        "level",
        "descriptors",
        "functions",
        "matrix",
        "char_poly",
        "min_poly",
    )

    def __init__(self, field, support, level, descriptors, functions, matrix,
                 char_poly, min_poly):
        self.field = field
        self.support = tuple(support)
        self.level = level
        self.descriptors = tuple(descriptors)
        self.functions = tuple(functions)
        self.matrix = matrix
        self.char_poly = char_poly
        self.min_poly = min_poly

    @property
    def dim(self):
        return len(self.descriptors)

    def basis_labels(self):
        return [_basis_label(d) for d in self.descriptors]

    def as_dict(self):
        return {
            "support": [str(p) for p in self.support],
            "level": self.level,
            "basis": self.basis_labels(),
            "matrix": [[str(e) for e in row] for row in self.matrix],
            "char_poly": self.char_poly.to_str("X"),
            "min_poly": self.min_poly.to_str("X"),
        }

    def __repr__(self):
        return f"FiltrationOperator(dim={self.dim})"


def td_matrix(c: Correspondence, S, n: int, rng=None) -> FiltrationOperator:
    """Matrix of the trace action on the level-n space over the support S.

    Demands that every forward fiber of S stays inside S and that every
    internal edge has backward multiplicity at least its forward one; under
    those conditions each image expands exactly in the basis.
    """
    rng = rng or random.Random(0)
    field = c.field
    if n < 1:
        raise ValueError("level must be at least 1")
    pts = _unique_sorted(S)
    if not pts:
        raise NotForwardComplete("empty support")
    for pt in pts:
        if pt.field != field:
            raise NonRationalPoint(f"{pt} is not rational over the base field")
    keys = {pt.key() for pt in pts}
    for v in pts:
        roots, residual = fiber(c, FORWARD, v, ext_bound=1, rng=rng)
        if residual:
            raise NotForwardComplete(f"forward fiber of {v} leaves the base field")
        for w, _ in roots:
            if w.key() not in keys:
                raise NotForwardComplete(
                    f"forward fiber of {v} contains {w} outside the set"
                )
            for _idx, _m, e1, e2 in edge_records(c, v, w):
                if e1 > e2:
                    raise NotRamificationIncreasing(
                        f"edge ({v}, {w}) has forward multiplicity {e1} "
                        f"above backward multiplicity {e2}"
                    )
    descrs, fns = filtration_basis(field, pts, n)
    cols = [
        _filtration_coordinates(td_apply(c, g), descrs, fns, n, field) for g in fns
    ]
    dim = len(fns)
    matrix = [[cols[j][i] for j in range(dim)] for i in range(dim)]
    cp = linalg.charpoly(matrix, field)
    mp = linalg.minpoly(matrix, field)
    return FiltrationOperator(field, pts, n, descrs, fns, matrix, cp, mp)


def td_min_poly(c: Correspondence, S, n: int, rng=None) -> Poly:
    """Minimal polynomial of the trace action on the level-n space."""
    return td_matrix(c, S, n, rng=rng).min_poly


# ---------------------------------------------------------------------------
# annihilator probe
# ---------------------------------------------------------------------------


class AnnihilatorVerdict:
    """Outcome of the annihilating-polynomial probe."""

    CERTIFIED = "CertifiedAnnihilated"
    STABILIZED = "StabilizedCandidate"
    NO_ANNIHILATOR = "NoAnnihilatorUpToDegree"

    __slots__ = ("status", "annihilator", "stable_range", "observed_degree",
                 "evidence")

    def __init__(self, status, annihilator=None, stable_range=None,
                 observed_degree=None, evidence=None):
        self.status = status
        self.annihilator = annihilator
        self.stable_range = stable_range
        self.observed_degree = observed_degree
        self.evidence = list(evidence or [])

    def as_dict(self):
        return {
            "status": self.status,
            "annihilator": None if self.annihilator is None
            else self.annihilator.to_str("X"),
            "stable_range": None if self.stable_range is None
            else list(self.stable_range),
            "observed_degree": self.observed_degree,
            "evidence": list(self.evidence),
        }

    def __repr__(self):
        return f"AnnihilatorVerdict({self.status})"


def _automorphism_order(c, budget):
    """Compositional order of a degree-one morphism divisor when at most
    budget; None otherwise or when c is not of that shape."""
    try:
        _, u = as_morphism(c)
    except NotMorphismType:
        return None
    if u.degree != 1:
        return None
    ident = RationalFunction.x(c.field)
    g = u
    for m in range(1, budget + 1):
        if g == ident:
            return m
        g = g.compose(u)
    return None


def lin_finitary_test(c: Correspondence, S, n_max: int, buffer: int = 3,
                      rng=None, order_budget: int = 24) -> AnnihilatorVerdict:
    """Probe for one polynomial annihilating the trace action at every level.

    Computes the minimal polynomial of the level matrix for n = 1..n_max.
    A candidate counts as stabilized only when the tail of constant minimal
    polynomials covers at least `buffer` levels and more than half the
    range: nilpotency depth can plateau for long stretches, and plateaus
    shorter than half the range are not accepted as convergence.  A
    degree-one morphism whose compositional order m is verified exactly
    upgrades the verdict to a certificate with annihilator X^m - 1.
    """
    if n_max < 1:
        raise ValueError("need at least one level")
    evidence = []
    polys = []
    for n in range(1, n_max + 1):
        mp = td_min_poly(c, S, n, rng=rng)
        polys.append(mp)
        evidence.append(f"level {n}: minimal polynomial degree {mp.degree}")
    order = _automorphism_order(c, order_budget)
    if order is not None:
        field = c.field
        q = Poly(field, [-field.one] + [field.zero] * (order - 1) + [field.one])
        for mp in polys:
            assert (q % mp).is_zero
        evidence.append(f"compositional order {order} verified symbolically")
        return AnnihilatorVerdict(AnnihilatorVerdict.CERTIFIED, annihilator=q,
                                  evidence=evidence)
    window = min(n_max, max(buffer, n_max // 2 + 1))
    tail = polys[-window:]
    if all(q == tail[0] for q in tail):
        evidence.append(f"constant across the last {window} levels")
        return AnnihilatorVerdict(
            AnnihilatorVerdict.STABILIZED,
            annihilator=tail[0],
            stable_range=(n_max - window + 1, n_max),
            evidence=evidence,
        )
    evidence.append("minimal polynomial still changing in the upper half")
    return AnnihilatorVerdict(
        AnnihilatorVerdict.NO_ANNIHILATOR,
        observed_degree=polys[-1].degree,
        evidence=evidence,
    )


# ---------------------------------------------------------------------------
# path-count falsification
# ---------------------------------------------------------------------------


class QtdResult:
    """Result of the truncated path-count identity check."""

    HOLDS = "Holds"
    FALSIFIED = "FalsifiedAt"

    __slots__ = ("status", "pair", "value", "defects")

    def __init__(self, status, pair=None, value=None, defects=None):
        self.status = status
        self.pair = pair
        self.value = value
        self.defects = list(defects or [])

    def as_dict(self):
        return {
            "status": self.status,
            "pair": None if self.pair is None else [str(p) for p in self.pair],
            "value": None if self.value is None else str(self.value),
            "defect_count": len(self.defects),
        }

    def __repr__(self):
        if self.status == self.HOLDS:
            return "QtdResult(Holds)"
        return f"QtdResult(FalsifiedAt{self.pair})"


def qtd_check(c: Correspondence, Q: Poly, Sp, radius: int, rng=None) -> QtdResult:
    """Test the path-count consequence of an annihilating polynomial.

    If Q kills the trace action then for every ordered vertex pair the
    Q-weighted sum of path counts vanishes in the base field.  Evaluates
    that sum over the internal adjacency of the vertex set for all pairs
    within the given directed distance; reports the first nonzero value in
    canonical vertex order, with every defect kept on the result.
    """
    if Q.is_zero:
        raise ZeroPolynomial("zero candidate annihilator")
    if Q.field != c.field:
        raise FieldMismatch("polynomial and correspondence over different fields")
    if radius < 0:
        raise ValueError("negative radius")
    field = c.field
    mat = adjacency_matrix(c, Sp, rng=rng)
    verts = mat.vertices
    k = len(verts)
    d = Q.degree
    powers = [mat.power(i) for i in range(d + 1)]
    succ = [[i for i in range(k) if mat.entries[i][j] > 0] for j in range(k)]
    dist = []
    for s in range(k):
        row = [None] * k
        row[s] = 0
        frontier = [s]
        while frontier:
            nxt = []
            for v in frontier:
                for w in succ[v]:
                    if row[w] is None:
                        row[w] = row[v] + 1
                        nxt.append(w)
            frontier = nxt
        dist.append(row)
    defects = []
    for si, x in enumerate(verts):
        for ti, xp in enumerate(verts):
            dd = dist[si][ti]
            if dd is None or dd > radius:
                continue
            val = field.zero
            for i in range(d + 1):
                ai = Q.coeff(i)
                if ai.is_zero:
                    continue
                val = val + ai * field.element(powers[i][ti][si])
            if not val.is_zero:
                defects.append((x, xp, val))
    if defects:
        x, xp, val = defects[0]
        return QtdResult(QtdResult.FALSIFIED, pair=(x, xp), value=val,
                         defects=defects)
    return QtdResult(QtdResult.HOLDS)


# ---------------------------------------------------------------------------
# splitting a filtration level against a vanishing support
# ---------------------------------------------------------------------------


def _check_rational(field, points):
    for pt in points:
        if pt.field != field:
            raise NonRationalPoint(f"{pt} is not rational over the base field")


def _check_disjoint(a, b):
    keys = {p.key() for p in a}
    for p in b:
        if p.key() in keys:
            raise NotDisjoint(f"supports share the point {p}")


def _finite_vanishing_rows(field, fns, a, count):
    shift = Poly(field, [a, field.one])
    cols = [
        _series_quotient(g.num.compose(shift), g.den.compose(shift), count)
        for g in fns
    ]
    return [[cols[i][t] for i in range(len(fns))] for t in range(count)]


def _infinity_vanishing_rows(field, fns, count):
    cols = []
    for g in fns:
        revnum = Poly(field, list(reversed(g.num.coeffs)))
        revden = Poly(field, list(reversed(g.den.coeffs)))
        gap = g.den.degree - g.num.degree
        ser = _series_quotient(revnum, revden, count)
        cols.append([field.zero] * min(gap, count) + ser[: max(0, count - gap)])
    return [[cols[i][t] for i in range(len(fns))] for t in range(count)]


def _vanishing_subspace(field, fns, S_pts, Sp_pts, n):
    """Least admissible vanishing order and the coordinate vectors of the
    functions vanishing to that order everywhere on the second support."""
    raw = (n - 1) * len(S_pts) + 2 - len(Sp_pts)
    n_prime = max(0, -(-raw // len(Sp_pts)))
    rows = []
    if n_prime:
        for pt in Sp_pts:
            if pt.is_infinity:
                rows.extend(_infinity_vanishing_rows(field, fns, n_prime))
            else:
                rows.extend(_finite_vanishing_rows(field, fns, pt.value(), n_prime))
    if rows:
        vecs = linalg.nullspace(rows, field.zero, field.one)
    else:
        vecs = [
            [field.one if i == j else field.zero for i in range(len(fns))]
            for j in range(len(fns))
        ]
    return n_prime, vecs


def _combine(field, fns, vec):
    out = _rf_zero(field)
    for coeff, g in zip(vec, fns):
        if not coeff.is_zero:
            out = out + coeff * g
    return out


def almost_split(c: Correspondence, S, Sp, n: int, Spp=None, rng=None) -> dict:
    """Split a filtration level against a disjoint vanishing support.

    Picks the least vanishing order n' with (n-1)|S| - n'|S'| in the window
    (-2, |S'| - 2], builds the subspace V of level-n functions over S that
    vanish to order at least n' everywhere on the second support, then
    verifies that the level-(n-1) space plus V spans the whole level and
    that dim V is at most |S| + |S'| - 1.  With a third disjoint support,
    also checks that V meets its analogue trivially once n exceeds
    2 + (|S'| + |S''| - 4)/|S|; above that bound the divisor
    n*D_S - n'*D_S' - n''*D_S'' has negative degree, so the intersection
    space is forced to vanish.
    """
    field = c.field
    if n < 1:
        raise ValueError("level must be at least 1")
    S_pts = _unique_sorted(S)
    Sp_pts = _unique_sorted(Sp)
    if not S_pts or not Sp_pts:
        raise ValueError("empty support")
    _check_rational(field, S_pts)
    _check_rational(field, Sp_pts)
    _check_disjoint(S_pts, Sp_pts)
    Spp_pts = None
    if Spp is not None:
        Spp_pts = _unique_sorted(Spp)
        if not Spp_pts:
            raise ValueError("empty support")
        _check_rational(field, Spp_pts)
        _check_disjoint(S_pts, Spp_pts)
        _check_disjoint(Sp_pts, Spp_pts)
    descrs, fns = filtration_basis(field, S_pts, n)
    n_prime, vecs = _vanishing_subspace(field, fns, S_pts, Sp_pts, n)
    lower_descrs, _ = filtration_basis(field, S_pts, n - 1)
    rows = [
        [field.one if dd == d else field.zero for dd in descrs]
        for d in lower_descrs
    ]
    rows.extend(vecs)
    complement_ok = linalg.rank(rows) == len(descrs)
    report = {
        "n_prime": n_prime,
        "dim": len(vecs),
        "basis": [_combine(field, fns, v) for v in vecs],
        "complement_ok": complement_ok,
        "dim_bound_ok": len(vecs) <= len(S_pts) + len(Sp_pts) - 1,
    }
    if Spp_pts is not None:
        npp, wecs = _vanishing_subspace(field, fns, S_pts, Spp_pts, n)
        inter_dim = len(vecs) + len(wecs) - linalg.rank(vecs + wecs)
        threshold = 2 + Fraction(len(Sp_pts) + len(Spp_pts) - 4, len(S_pts))
        applicable = Fraction(n) > threshold
        report["second_n_prime"] = npp
        report["intersection_dim"] = inter_dim
        report["intersection_threshold"] = threshold
        report["intersection_ok"] = (inter_dim == 0) if applicable else None
    return report
