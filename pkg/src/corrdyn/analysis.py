"""Global verdicts and quantitative bounds for a self-correspondence.

Four instruments: a size bound on backward-complete sets when the two
degrees differ, an exact linear search for a common inner map whose fibers
tile the correspondence (with an untwisted, a pole-support and a pencil
variant), a combined decision cascade for whether infinitely many finite
complete sets can exist, and bound/height arithmetic on rational points.
"""

import math
import random
from fractions import Fraction

from .corr import Correspondence, as_morphism
from .errors import (
    Balanced,
    NonPositiveDegree,
    NotMorphismType,
    PreconditionError,
    WrongField,
)
from .graph import BUDGET_EXCEEDED, complete_set_search
from . import linalg, oper
from .oper import _monic_in_x, _rx_rem
from .points import ProjectivePoint
from .poly import BiPoly, Poly, RationalFunction, roots_in_field


def unbalanced_bound(c: Correspondence, genus=None) -> Fraction:
    """Size bound for finite backward-complete sets when the degrees differ.

    Evaluates 2(g + d2 - 1)/(d2 - d1) in the orientation with d1 < d2 (the
    transpose orientation is taken automatically).  Unless an exact genus
    is supplied, g is the arithmetic genus of the divisor class on the
    product surface, an upper bound for any component's normalization, so
    the inequality stays valid.
    """
    d1, d2 = c.d1, c.d2
    if d1 == d2:
        raise Balanced("equal degrees admit no bound of this shape")
    if d1 > d2:
        d1, d2 = d2, d1
    if genus is None:
        genus = sum(
            m * (comp.deg_x - 1) * (comp.deg_y - 1) for comp, m in c.components
        )
    return Fraction(2 * (genus + d2 - 1), d2 - d1)


# ---------------------------------------------------------------------------
# core search
# ---------------------------------------------------------------------------


def _reduce_bipoly(monic, H):
    """Remainder of H modulo the monic component, as a coefficient list of
    rational functions in the second variable."""
    vec = [RationalFunction.from_poly(cp) for cp in H.coeff_polys("x")]
    return _rx_rem(vec, monic)


def _core_basis(c, mode, M, support):
    """Numerators over a common denominator spanning the search space."""
    field = c.field
    if mode in ("polynomial", "twisted"):
        nums = [Poly(field, [field.zero] * j + [field.one]) for j in range(M + 1)]
        return nums, Poly.one(field)
    if mode != "pole_support":
        raise ValueError(f"unknown mode {mode!r}")
    if not support:
        raise ValueError("pole_support mode needs a support")
    pts = oper._unique_sorted(support)
    for pt in pts:
        if pt.field != field:
            raise WrongField(f"{pt} is not rational over the base field")
    den = Poly.one(field)
    for pt in pts:
        if not pt.is_infinity:
            den = den * Poly(field, [-pt.value(), field.one]) ** M
    descrs, _ = oper.filtration_basis(field, pts, M)
    nums = []
    for d in descrs:
        if d[0] == "const":
            nums.append(den)
        elif d[0] == "pow":
            nums.append(Poly(field, [field.zero] * d[1] + [field.one]) * den)
        else:
            lin = Poly(field, [-d[1].value(), field.one])
            nums.append(den.exact_div(lin ** d[2]))
    return nums, den


def _verify_core(c, hnum, den, lam):
    """Exact check that hnum(x)/den(x) takes lam-proportional values on the
    two projections of every component."""
    X = BiPoly.from_poly(hnum, "x") * BiPoly.from_poly(den, "y")
    Y = BiPoly.from_poly(hnum, "y") * BiPoly.from_poly(den, "x")
    H = X - Y * lam
    for comp, _m in c.components:
        if _reduce_bipoly(_monic_in_x(comp), H):
            return False
    return True


def _field_roots(p, rng=None):
    if p.is_zero or p.is_constant:
        return []
    return [r for r, _m in roots_in_field(p, rng)]


def _pencil_candidates(rows, field, rng=None):
    """Values of the pencil parameter where the rank can drop: in-field
    roots of the last pivot of a division-free elimination (cross products
    only multiply in extra factors, so every rank-dropping value stays a
    root), plus the untwisted value 1."""
    mat = [row[:] for row in rows]
    cols = len(mat[0]) if mat else 0
    r = 0
    last_pivot = None
    for col in range(cols):
        if r >= len(mat):
            break
        sel = None
        for i in range(r, len(mat)):
            if not mat[i][col].is_zero:
                sel = i
                break
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        piv = mat[r][col]
        last_pivot = piv
        for i in range(r + 1, len(mat)):
            if mat[i][col].is_zero:
                continue
            f = mat[i][col]
            mat[i] = [mat[i][j] * piv - f * mat[r][j] for j in range(cols)]
        r += 1
    cands = {field.one.key(): field.one}
    if last_pivot is not None:
        for root in _field_roots(last_pivot, rng):
            cands.setdefault(root.key(), root)
    return [cands[k] for k in sorted(cands)]


def core_search(c: Correspondence, mode: str = "polynomial", M: int = 1,
                support=None, rng=None):
    """Search for a common inner map of degree at most M.

    "polynomial" ranges h over polynomials, "pole_support" over functions
    with poles of order at most M confined to the given support; both solve
    the exact linear condition that h agree on the two projections of every
    component and return the first non-constant verified hit, or None.
    "twisted" solves the pencil condition h(first) = lam * h(second) and
    returns every verified (lam, h) pair; the candidate lam are read off a
    division-free elimination of the pencil.
    """
    if M < 1:
        raise ValueError("degree budget must be at least 1")
    field = c.field
    nums, den = _core_basis(c, mode, M, support)
    x_parts = []
    y_parts = []
    for comp, _m in c.components:
        monic = _monic_in_x(comp)
        size = len(monic) - 1
        per_x = []
        per_y = []
        for n in nums:
            X = BiPoly.from_poly(n, "x") * BiPoly.from_poly(den, "y")
            Y = BiPoly.from_poly(n, "y") * BiPoly.from_poly(den, "x")
            vx = _reduce_bipoly(monic, X)
            vy = _reduce_bipoly(monic, Y)
            per_x.append(vx + [RationalFunction.constant(field, 0)] * (size - len(vx)))
            per_y.append(vy + [RationalFunction.constant(field, 0)] * (size - len(vy)))
        x_parts.append(per_x)
        y_parts.append(per_y)

    if mode == "twisted":
        pencil = []
        for per_x, per_y in zip(x_parts, y_parts):
            ax = _cleared_pair_rows(per_x, per_y, field)
            pencil.extend(ax)
        generic = [[RationalFunction.from_poly(e) for e in row] for row in pencil]
        if linalg.rank(generic) != len(nums):
            raise AssertionError("pencil is degenerate for every parameter")
        out = []
        for lam in _pencil_candidates(pencil, field, rng):
            rows = [[e.eval(lam) for e in row] for row in pencil]
            for vec in linalg.nullspace(rows, field.zero, field.one):
                hnum = Poly.zero(field)
                for a, n in zip(vec, nums):
                    hnum = hnum + n * a
                h = RationalFunction(hnum, den)
                if h.is_constant:
                    continue
                if _verify_core(c, hnum, den, lam):
                    out.append((lam, h))
        return out

    rows = _stack_rows(x_parts, y_parts, field, len(nums))
    for vec in linalg.nullspace(rows, field.zero, field.one):
        hnum = Poly.zero(field)
        for a, n in zip(vec, nums):
            hnum = hnum + n * a
        h = RationalFunction(hnum, den)
        if h.is_constant:
            continue
        if _verify_core(c, hnum, den, field.one):
            return h
    return None


def _stack_rows(x_parts, y_parts, field, width):
    """Scalar rows of the untwisted condition from per-component reductions."""
    rows = []
    for per_x, per_y in zip(x_parts, y_parts):
        size = len(per_x[0])
        for i in range(size):
            coord = [per_x[j][i] - per_y[j][i] for j in range(width)]
            common = Poly.one(field)
            for e in coord:
                common = common.lcm(e.den)
            cleared = [e.num * common.exact_div(e.den) for e in coord]
            top = max(p.degree for p in cleared)
            for t in range(top + 1):
                rows.append([cleared[j].coeff(t) for j in range(width)])
    return rows


def _cleared_pair_rows(per_x, per_y, field):
    """Pencil rows a - lam*b from per-basis reductions of the two sides,
    with a common denominator per coordinate."""
    width = len(per_x)
    size = len(per_x[0])
    rows = []
    for i in range(size):
        cx = [per_x[j][i] for j in range(width)]
        cy = [per_y[j][i] for j in range(width)]
        common = Poly.one(field)
        for e in cx + cy:
            common = common.lcm(e.den)
        ax = [e.num * common.exact_div(e.den) for e in cx]
        ay = [e.num * common.exact_div(e.den) for e in cy]
        top = max(p.degree for p in ax + ay)
        for t in range(top + 1):
            rows.append([
                Poly(field, [ax[j].coeff(t), -ay[j].coeff(t)])
                for j in range(width)
            ])
    return rows


# ---------------------------------------------------------------------------
# finitary cascade
# ---------------------------------------------------------------------------


class FinitaryVerdict:
    """Combined decision on the existence of infinitely many complete sets."""

    CERTIFIED_FINITARY = "CertifiedFinitary"
    CERTIFIED_NON_FINITARY = "CertifiedNonFinitary"
    EVIDENCE = "Evidence"

    __slots__ = ("status", "direction", "reason", "core", "automorphism_order",
                 "bound", "evidence", "artifacts")

    def __init__(self, status, direction=None, reason=None, core=None,
                 automorphism_order=None, bound=None, evidence=None,
                 artifacts=None):
        self.status = status
        self.direction = direction
        self.reason = reason
        self.core = core
        self.automorphism_order = automorphism_order
        self.bound = bound
        self.evidence = list(evidence or [])
        self.artifacts = dict(artifacts or {})

    def as_dict(self):
        return {
            "status": self.status,
            "direction": self.direction,
            "reason": self.reason,
            "core": None if self.core is None else self.core.to_str(),
            "automorphism_order": self.automorphism_order,
            "bound": None if self.bound is None else str(self.bound),
            "evidence": list(self.evidence),
            "artifacts": self.artifacts,
        }

    def __repr__(self):
        tag = self.status if self.direction is None else (
            f"{self.status}:{self.direction}")
        return f"FinitaryVerdict({tag})"


def _escaping_orbit(u, field, steps):
    """Orbit of a small rational seed that never revisits a point within
    the step budget, or None."""
    for raw in (1, 2, 3, -1, 5, 0):
        seed = ProjectivePoint.finite(field, field.element(raw))
        orbit = [seed]
        seen = {seed.key()}
        pt = seed
        cycled = False
        for _ in range(steps):
            pt = u.eval_point(pt)
            if pt.key() in seen:
                cycled = True
                break
            seen.add(pt.key())
            orbit.append(pt)
        if not cycled:
            return orbit
    return None


def finitary_verdict(c: Correspondence, core_degree: int = 4,
                     order_budget: int = 24, orbit_steps: int = 32,
                     max_ext: int = 3, max_size: int = 64,
                     n_levels: int = 6, rng=None) -> FinitaryVerdict:
    """Decision cascade for the existence of infinitely many complete sets.

    Unequal degrees certify the negative outright.  A degree-one morphism
    is settled by its compositional order when finite; with no finite order
    an escaping orbit is exhibited as negative evidence.  A verified core
    map certifies the positive.  Otherwise the verdict reports evidence
    from seed-closure growth and, in characteristic zero, from the
    annihilator probe on a certified set.
    """
    rng = rng or random.Random(0)
    field = c.field
    ev = []
    artifacts = {}
    if c.d1 != c.d2:
        bound = unbalanced_bound(c)
        ev.append(
            f"degrees ({c.d1}, {c.d2}) differ; finite backward-complete sets "
            f"in the wide orientation have at most {bound} points"
        )
        return FinitaryVerdict(
            FinitaryVerdict.CERTIFIED_NON_FINITARY, reason="unbalanced",
            bound=bound, evidence=ev,
        )
    u = None
    try:
        _, u = as_morphism(c)
    except NotMorphismType:
        pass
    if u is not None and u.degree == 1:
        budget = order_budget
        if field.kind == "F":
            budget = max(budget, field.order ** 3)
        order = oper._automorphism_order(c, budget)
        if order is not None:
            ev.append(f"compositional order {order} verified symbolically")
            return FinitaryVerdict(
                FinitaryVerdict.CERTIFIED_FINITARY,
                automorphism_order=order, evidence=ev,
            )
        ev.append(f"no compositional order up to {budget}")
        orbit = _escaping_orbit(u, field, orbit_steps)
        if orbit is not None:
            ev.append(
                f"orbit of {orbit[0]} visits {len(orbit)} distinct points "
                f"without repeating"
            )
            artifacts["orbit"] = [str(p) for p in orbit[:8]]
            if field.kind == "Q":
                artifacts["orbit_heights"] = [
                    round(naive_height(p)[0], 6) for p in orbit[:8]
                ]
            return FinitaryVerdict(
                FinitaryVerdict.EVIDENCE, direction="non-finitary",
                evidence=ev, artifacts=artifacts,
            )
    h = core_search(c, "polynomial", core_degree, rng=rng)
    if h is None:
        support = [
            ProjectivePoint.finite(field, field.zero),
            ProjectivePoint.infinity(field),
        ]
        h = core_search(c, "pole_support", core_degree, support=support, rng=rng)
    if h is not None:
        ev.append(f"inner map of degree {h.degree} found and verified by division")
        return FinitaryVerdict(
            FinitaryVerdict.CERTIFIED_FINITARY, core=h, evidence=ev,
        )
    ev.append(f"no inner map up to degree {core_degree}")
    direction = None
    certified = None
    for raw in (0, 1, None):
        if raw is None:
            seed = ProjectivePoint.infinity(field)
        else:
            seed = ProjectivePoint.finite(field, field.element(raw))
        report = complete_set_search(c, seed, max_ext=max_ext,
                                     max_size=max_size, rng=rng)
        if report.certified:
            if certified is None:
                certified = report
            ev.append(f"closure of {seed}: certified, {len(report.vertices)} points")
        else:
            direction = "non-finitary"
            ev.append(f"closure of {seed}: exceeded budgets ({report.budgets})")
    if field.kind == "Q" and certified is not None:
        try:
            probe = oper.lin_finitary_test(c, list(certified.vertices),
                                           n_levels, rng=rng)
            ev.append(f"annihilator probe on certified set: {probe.status}")
            if probe.status == oper.AnnihilatorVerdict.NO_ANNIHILATOR:
                direction = "non-finitary"
            elif direction is None:
                direction = "finitary"
        except PreconditionError as exc:
            ev.append(f"annihilator probe not applicable: {exc}")
    if direction is None:
        direction = "finitary" if certified is not None else "non-finitary"
    return FinitaryVerdict(FinitaryVerdict.EVIDENCE, direction=direction,
                           evidence=ev, artifacts=artifacts)


# ---------------------------------------------------------------------------
# bound and height arithmetic
# ---------------------------------------------------------------------------


def pakovich_bound(g_D: int, d: int) -> dict:
    """Size-bound arithmetic 3 + (2g - 1)/d for complete sets of a pulled
    back morphism; pure arithmetic, the geometric hypotheses are the
    caller's responsibility and are echoed in the note."""
    if d <= 0:
        raise NonPositiveDegree(f"degree {d} must be positive")
    if g_D < 0:
        raise ValueError("negative genus")
    return {
        "bound": Fraction(2 * g_D - 1, d) + 3,
        "equality_possible": g_D == 0 and d == 1,
        "note": "assumes the factorization hypotheses; they are not checked here",
    }


def naive_height(pt: ProjectivePoint):
    """Logarithmic height of a rational projective point.

    Clears the coordinates to coprime integers (a, b) and returns
    (log max(|a|, |b|), (a, b)); zero exactly at [0:1], [1:0] and [±1:1].
    """
    if pt.field.kind != "Q":
        raise WrongField("heights are computed over the rationals")
    if pt.is_infinity:
        return 0.0, (1, 0)
    v = pt.value().payload
    a, b = v.numerator, v.denominator
    return math.log(max(abs(a), b)), (a, b)


def cycle_height_check(c: Correspondence, report) -> dict:
    """Height bound along directed cycles of a certified set.

    For an unbalanced correspondence oriented with d1 < d2, the edge
    constant M = max |d2 h(source) - d1 h(target)| forces every vertex on a
    directed cycle to height at most M/(d2 - d1) + 1.  Checks that bound on
    the report's cycle vertices.
    """
    d1, d2 = c.d1, c.d2
    if d1 == d2:
        raise Balanced("height contraction needs unequal degrees")
    if d1 > d2:
        raise ValueError("apply to the transpose orientation with d1 < d2")
    heights = {v.key(): naive_height(v)[0] for v in report.vertices}
    edge_constant = 0.0
    for e in report.edges:
        gap = abs(d2 * heights[e.source.key()] - d1 * heights[e.target.key()])
        edge_constant = max(edge_constant, gap)
    bound = edge_constant / (d2 - d1) + 1
    succ = {}
    for e in report.edges:
        succ.setdefault(e.source.key(), set()).add(e.target.key())
    cycle_keys = set()
    for v in report.vertices:
        stack = list(succ.get(v.key(), ()))
        seen = set()
        while stack:
            w = stack.pop()
            if w == v.key():
                cycle_keys.add(v.key())
                break
            if w in seen:
                continue
            seen.add(w)
            stack.extend(succ.get(w, ()))
    cycle_vertices = [v for v in report.vertices if v.key() in cycle_keys]
    ok = all(heights[v.key()] <= bound + 1e-9 for v in cycle_vertices)
    return {
        "edge_constant": edge_constant,
        "bound": bound,
        "cycle_vertices": cycle_vertices,
        "heights": {str(v): heights[v.key()] for v in cycle_vertices},
        "ok": ok,
    }
