"""Exact polynomial algebra: univariate and bivariate polynomials, rational
functions, resultants, squarefree decomposition, finite-field factorization
and root finding on the projective line.

All coefficient arithmetic goes through the Field/FieldElement layer, so the
same code paths serve Q and every F_{p^k}.  Resultants run a subresultant
remainder sequence over a pluggable coefficient ring; a fraction-free
Sylvester determinant is kept alongside as an independent cross-check.
"""

from __future__ import annotations

import random

from .errors import FieldMismatch, ZeroPolynomial
from .fields import Field, FieldElement, make_extension, make_prime_field
from .points import ProjectivePoint

# ---------------------------------------------------------------------------
# univariate polynomials


class Poly:
    """Dense univariate polynomial over a Field, coefficients ascending."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        cs = [field.element(c) for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    # -- constructors

    @classmethod
    def zero(cls, field):
        return cls(field, [])

    @classmethod
    def one(cls, field):
        return cls(field, [field.one])

    @classmethod
    def constant(cls, field, c):
        return cls(field, [field.element(c)])

    @classmethod
    def x(cls, field):
        return cls(field, [field.zero, field.one])

    # -- basic structure

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def lead(self) -> FieldElement:
        if self.is_zero:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i) -> FieldElement:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    # -- arithmetic

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatch("polynomials over different fields")
            return other
        if isinstance(other, (int, FieldElement)):
            return Poly.constant(self.field, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(
            self.field,
            [self.coeff(i) + other.coeff(i) for i in range(n)],
        )

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            c = self.field.element(other)
            return Poly(self.field, [a * c for a in self.coeffs])
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Poly.zero(self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = Poly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other: "Poly"):
        other = self._coerce(other)
        if other.is_zero:
            raise ZeroPolynomial("division by the zero polynomial")
        q = [self.field.zero] * max(0, self.degree - other.degree + 1)
        r = list(self.coeffs)
        inv = other.lead().inverse()
        d = other.degree
        while len(r) - 1 >= d and r:
            c = r[-1] * inv
            shift = len(r) - 1 - d
            q[shift] = c
            for i, oc in enumerate(other.coeffs):
                r[shift + i] = r[shift + i] - c * oc
            while r and r[-1].is_zero:
                r.pop()
        return Poly(self.field, q), Poly(self.field, r)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero:
            raise ZeroPolynomial("inexact polynomial division")
        return q

    def monic(self):
        """Return (leading coefficient, self / leading coefficient)."""
        if self.is_zero:
            return self.field.one, self
        c = self.lead()
        return c, self * c.inverse()

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, self._coerce(other)
        while not b.is_zero:
            a, b = b, a % b
        if a.is_zero:
            return a
        return a.monic()[1]

    def lcm(self, other: "Poly") -> "Poly":
        if self.is_zero or other.is_zero:
            return Poly.zero(self.field)
        g = self.gcd(other)
        return (self * other).exact_div(g).monic()[1]

    def derivative(self) -> "Poly":
        return Poly(
            self.field,
            [self.coeffs[i] * i for i in range(1, len(self.coeffs))],
        )

    def eval(self, v: FieldElement) -> FieldElement:
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly.zero(self.field)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def root_multiplicity(self, a: FieldElement) -> int:
        lin = Poly(self.field, [-self.field.element(a), self.field.one])
        m, f = 0, self
        while not f.is_zero:
            q, r = f.divmod(lin)
            if not r.is_zero:
                break
            m, f = m + 1, q
        return m

    def deflate(self, p: int) -> "Poly":
        """Keep exponents divisible by p, dividing them by p."""
        out = [self.field.zero] * (self.degree // p + 1) if not self.is_zero else []
        for i, c in enumerate(self.coeffs):
            if not c.is_zero:
                if i % p:
                    raise ZeroPolynomial("exponent not divisible by p")
                out[i // p] = c
        return Poly(self.field, out)

    def inflate(self, p: int) -> "Poly":
        if self.is_zero:
            return self
        out = [self.field.zero] * (self.degree * p + 1)
        for i, c in enumerate(self.coeffs):
            out[i * p] = c
        return Poly(self.field, out)

    # -- canonical key / printing

    def key(self):
        return (self.degree, tuple(c.key() for c in self.coeffs))

    def __eq__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = Poly.constant(self.field, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, tuple(c.payload for c in self.coeffs)))

    def to_str(self, var="x") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c.is_zero:
                continue
            cs = str(c)
            neg = cs.startswith("-")
            mag = cs[1:] if neg else cs
            if i == 0:
                term = mag
            else:
                xp = var if i == 1 else f"{var}^{i}"
                term = xp if mag == "1" else f"{mag}*{xp}"
            if not parts:
                parts.append(("-" if neg else "") + term)
            else:
                parts.append(("-" if neg else "+") + term)
        return "".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Poly({self.to_str()})"


# ---------------------------------------------------------------------------
# coefficient-ring adapters and the generic subresultant machinery


class FieldRing:
    """Field elements as a coefficient ring."""

    def __init__(self, field):
        self.zero = field.zero
        self.one = field.one

    @staticmethod
    def is_zero(a):
        return a.is_zero

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def exact_div(a, b):
        return a / b

    def power(self, a, n):
        return a**n


class PolyRing:
    """Univariate polynomials as a coefficient ring."""

    def __init__(self, field):
        self.zero = Poly.zero(field)
        self.one = Poly.one(field)

    @staticmethod
    def is_zero(a):
        return a.is_zero

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def exact_div(a, b):
        return a.exact_div(b)

    def power(self, a, n):
        return a**n


class BiRing:
    """Bivariate polynomials as a coefficient ring."""

    def __init__(self, field):
        self.zero = BiPoly.zero(field)
        self.one = BiPoly.one(field)

    @staticmethod
    def is_zero(a):
        return a.is_zero

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def exact_div(a, b):
        return a.exact_div(b)

    def power(self, a, n):
        return a**n


def _rtrim(u, ring):
    while u and ring.is_zero(u[-1]):
        u.pop()
    return u


def pseudo_rem(A, B, ring):
    """prem(A, B) = lc(B)^(deg A - deg B + 1) * A mod B, forced exponent."""
    dB = len(B) - 1
    lcB = B[-1]
    r = list(A)
    e = len(A) - 1 - dB + 1
    while r and len(r) - 1 >= dB:
        c = r[-1]
        shift = len(r) - 1 - dB
        r = [ring.mul(lcB, ri) for ri in r]
        for i, bc in enumerate(B):
            r[shift + i] = ring.sub(r[shift + i], ring.mul(c, bc))
        _rtrim(r, ring)
        e -= 1
    for _ in range(e):
        r = [ring.mul(lcB, ri) for ri in r]
    return r


def resultant_lists(A, B, ring):
    """Exact resultant of two coefficient lists via subresultants."""
    A = _rtrim(list(A), ring)
    B = _rtrim(list(B), ring)
    if not A or not B:
        return ring.zero
    dA, dB = len(A) - 1, len(B) - 1
    if dA == 0 and dB == 0:
        return ring.one
    if dB == 0:
        return ring.power(B[0], dA)
    if dA == 0:
        return ring.power(A[0], dB)
    s = 1
    if dA < dB:
        if (dA & 1) and (dB & 1):
            s = -s
        A, B = B, A
    g = ring.one
    h = ring.one
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if (dA & 1) and (dB & 1):
            s = -s
        R = pseudo_rem(A, B, ring)
        if not R:
            return ring.zero
        A = B
        denom = ring.mul(g, ring.power(h, delta))
        B = [ring.exact_div(c, denom) for c in R]
        g = A[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = ring.exact_div(ring.power(g, delta), ring.power(h, delta - 1))
        if len(B) - 1 == 0:
            break
    dA = len(A) - 1
    if dA == 1:
        res = B[0]
    else:
        res = ring.exact_div(ring.power(B[0], dA), ring.power(h, dA - 1))
    return res if s == 1 else ring.neg(res)


def sylvester_resultant(A, B, ring):
    """Resultant as a fraction-free Sylvester determinant (oracle path)."""
    A = _rtrim(list(A), ring)
    B = _rtrim(list(B), ring)
    if not A or not B:
        return ring.zero
    m, n = len(A) - 1, len(B) - 1
    if m == 0 and n == 0:
        return ring.one
    if m == 0:
        return ring.power(A[0], n)
    if n == 0:
        return ring.power(B[0], m)
    N = m + n
    M = [[ring.zero] * N for _ in range(N)]
    ad, bd = A[::-1], B[::-1]
    for i in range(n):
        for j, c in enumerate(ad):
            M[i][i + j] = c
    for i in range(m):
        for j, c in enumerate(bd):
            M[n + i][i + j] = c
    sign = 1
    denom = ring.one
    for k in range(N - 1):
        if ring.is_zero(M[k][k]):
            for i in range(k + 1, N):
                if not ring.is_zero(M[i][k]):
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return ring.zero
        for i in range(k + 1, N):
            for j in range(k + 1, N):
                num = ring.sub(
                    ring.mul(M[i][j], M[k][k]), ring.mul(M[i][k], M[k][j])
                )
                M[i][j] = ring.exact_div(num, denom)
            M[i][k] = ring.zero
        denom = M[k][k]
    det = M[N - 1][N - 1]
    return det if sign == 1 else ring.neg(det)


# ---------------------------------------------------------------------------
# bivariate polynomials


class BiPoly:
    """Sparse bivariate polynomial over a Field; terms map (i, j) -> coeff
    for x^i * y^j."""

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms):
        clean = {}
        for (i, j), c in terms.items():
            c = field.element(c)
            if not c.is_zero:
                clean[(i, j)] = c
        self.field = field
        self.terms = clean

    # -- constructors

    @classmethod
    def zero(cls, field):
        return cls(field, {})

    @classmethod
    def one(cls, field):
        return cls(field, {(0, 0): field.one})

    @classmethod
    def constant(cls, field, c):
        return cls(field, {(0, 0): field.element(c)})

    @classmethod
    def var_x(cls, field):
        return cls(field, {(1, 0): field.one})

    @classmethod
    def var_y(cls, field):
        return cls(field, {(0, 1): field.one})

    @classmethod
    def from_poly(cls, p: Poly, var: str) -> "BiPoly":
        if var == "x":
            return cls(p.field, {(i, 0): c for i, c in enumerate(p.coeffs)})
        return cls(p.field, {(0, j): c for j, c in enumerate(p.coeffs)})

    @classmethod
    def from_coeff_polys(cls, coeffs, var: str, field=None) -> "BiPoly":
        """Assemble from a list of Polys, the i-th being the coefficient of
        var^i (each Poly is in the other variable)."""
        field = field or coeffs[0].field
        terms = {}
        for e, p in enumerate(coeffs):
            for d, c in enumerate(p.coeffs):
                if var == "y":
                    terms[(d, e)] = c
                else:
                    terms[(e, d)] = c
        return cls(field, terms)

    # -- structure

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(ij == (0, 0) for ij in self.terms)

    def deg(self, var: str) -> int:
        if not self.terms:
            return -1
        idx = 0 if var == "x" else 1
        return max(ij[idx] for ij in self.terms)

    @property
    def deg_x(self) -> int:
        return self.deg("x")

    @property
    def deg_y(self) -> int:
        return self.deg("y")

    def lead_term(self):
        """(exponent pair, coefficient) maximal in lex order on (i, j)."""
        ij = max(self.terms)
        return ij, self.terms[ij]

    def coeff_polys(self, var: str) -> list:
        """Coefficients of var^0..var^d as Polys in the other variable."""
        d = self.deg(var)
        if d < 0:
            return []
        rows = [dict() for _ in range(d + 1)]
        for (i, j), c in self.terms.items():
            if var == "y":
                rows[j][i] = c
            else:
                rows[i][j] = c
        out = []
        for row in rows:
            n = max(row) + 1 if row else 0
            cs = [self.field.zero] * n
            for e, c in row.items():
                cs[e] = c
            out.append(Poly(self.field, cs))
        return out

    # -- arithmetic

    def _coerce(self, other):
        if isinstance(other, BiPoly):
            if other.field != self.field:
                raise FieldMismatch("bivariate polynomials over different fields")
            return other
        if isinstance(other, (int, FieldElement)):
            return BiPoly.constant(self.field, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for ij, c in other.terms.items():
            cur = terms.get(ij)
            terms[ij] = c if cur is None else cur + c
        return BiPoly(self.field, terms)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly(self.field, {ij: -c for ij, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            c = self.field.element(other)
            if c.is_zero:
                return BiPoly.zero(self.field)
            return BiPoly(
                self.field, {ij: a * c for ij, a in self.terms.items()}
            )
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                ij = (i1 + i2, j1 + j2)
                cur = terms.get(ij)
                prod = a * b
                terms[ij] = prod if cur is None else cur + prod
        return BiPoly(self.field, terms)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = BiPoly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def exact_div(self, other: "BiPoly") -> "BiPoly":
        """Exact division; raises ZeroPolynomial if not a multiple."""
        other = self._coerce(other)
        if other.is_zero:
            raise ZeroPolynomial("division by zero")
        if other.is_constant:
            inv = other.terms[(0, 0)].inverse()
            return self * inv
        # divide as polynomials in y with Poly-in-x coefficients
        if other.deg_y == 0:
            g = other.coeff_polys("y")[0]
            qs = [p.exact_div(g) for p in self.coeff_polys("y")]
            return BiPoly.from_coeff_polys(qs, "y", self.field) if qs else BiPoly.zero(self.field)
        rem = self
        bcs = other.coeff_polys("y")
        db = len(bcs) - 1
        blead = bcs[-1]
        qterms = BiPoly.zero(self.field)
        while not rem.is_zero and rem.deg_y >= db:
            rcs = rem.coeff_polys("y")
            c = rcs[-1].exact_div(blead)
            shift = len(rcs) - 1 - db
            qpart = BiPoly.from_coeff_polys(
                [Poly.zero(self.field)] * shift + [c], "y", self.field
            )
            qterms = qterms + qpart
            rem = rem - qpart * other
            if not rem.is_zero and rem.deg_y == len(rcs) - 1:
                raise ZeroPolynomial("inexact bivariate division")
        if not rem.is_zero:
            raise ZeroPolynomial("inexact bivariate division")
        return qterms

    # -- substitution

    def eval_x(self, v: FieldElement) -> Poly:
        """Substitute x = v; result is a Poly in y."""
        d = self.deg_y
        out = [self.field.zero] * (d + 1) if d >= 0 else []
        pows = _power_table(v, self.deg_x)
        for (i, j), c in self.terms.items():
            out[j] = out[j] + c * pows[i]
        return Poly(self.field, out)

    def eval_y(self, v: FieldElement) -> Poly:
        d = self.deg_x
        out = [self.field.zero] * (d + 1) if d >= 0 else []
        pows = _power_table(v, self.deg_y)
        for (i, j), c in self.terms.items():
            out[i] = out[i] + c * pows[j]
        return Poly(self.field, out)

    def eval_xy(self, vx: FieldElement, vy: FieldElement) -> FieldElement:
        acc = self.field.zero
        px = _power_table(vx, self.deg_x)
        py = _power_table(vy, self.deg_y)
        for (i, j), c in self.terms.items():
            acc = acc + c * px[i] * py[j]
        return acc

    def swap(self) -> "BiPoly":
        return BiPoly(self.field, {(j, i): c for (i, j), c in self.terms.items()})

    def derivative(self, var: str) -> "BiPoly":
        terms = {}
        for (i, j), c in self.terms.items():
            if var == "x" and i > 0:
                terms[(i - 1, j)] = c * i
            elif var == "y" and j > 0:
                terms[(i, j - 1)] = c * j
        return BiPoly(self.field, terms)

    def map_coeffs(self, fn, field=None) -> "BiPoly":
        field = field or self.field
        return BiPoly(field, {ij: fn(c) for ij, c in self.terms.items()})

    # -- content and normalization

    def content(self, var: str) -> Poly:
        """gcd of the coefficients of powers of var (a Poly in the other
        variable, monic)."""
        cs = self.coeff_polys(var)
        g = Poly.zero(self.field)
        for p in cs:
            g = g.gcd(p)
            if g.degree == 0:
                break
        return g

    def normalized(self):
        """(unit, monic-normalized polynomial) w.r.t. lex leading term."""
        if self.is_zero:
            return self.field.one, self
        _, c = self.lead_term()
        return c, self * c.inverse()

    # -- canonical key / printing

    def key(self):
        items = sorted(self.terms.items(), key=lambda kv: kv[0])
        return tuple((ij, c.key()) for ij, c in items)

    def __eq__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = BiPoly.constant(self.field, other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash(
            (self.field, frozenset((ij, c.payload) for ij, c in self.terms.items()))
        )

    def to_str(self, vx="x", vy="y") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for (i, j) in sorted(self.terms, reverse=True):
            c = self.terms[(i, j)]
            cs = str(c)
            neg = cs.startswith("-")
            mag = cs[1:] if neg else cs
            factors = []
            if i:
                factors.append(vx if i == 1 else f"{vx}^{i}")
            if j:
                factors.append(vy if j == 1 else f"{vy}^{j}")
            if not factors:
                term = mag
            else:
                body = "*".join(factors)
                term = body if mag == "1" else f"{mag}*{body}"
            if not parts:
                parts.append(("-" if neg else "") + term)
            else:
                parts.append(("-" if neg else "+") + term)
        return "".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"BiPoly({self.to_str()})"


def _power_table(v: FieldElement, n: int):
    out = [v.field.one]
    for _ in range(max(0, n)):
        out.append(out[-1] * v)
    return out


# ---------------------------------------------------------------------------
# bivariate gcd and squarefree decomposition


def bipoly_gcd(F: BiPoly, G: BiPoly) -> BiPoly:
    """Full gcd in k[x, y], normalized to leading coefficient 1."""
    if F.is_zero:
        return G.normalized()[1]
    if G.is_zero:
        return F.normalized()[1]
    if F.deg_y == 0 and G.deg_y == 0:
        g = F.coeff_polys("y")[0].gcd(G.coeff_polys("y")[0])
        return BiPoly.from_poly(g, "x")
    if F.deg_y == 0:
        g = F.coeff_polys("y")[0].gcd(G.content("y"))
        return BiPoly.from_poly(g, "x")
    if G.deg_y == 0:
        g = G.coeff_polys("y")[0].gcd(F.content("y"))
        return BiPoly.from_poly(g, "x")
    contF, contG = F.content("y"), G.content("y")
    cont = contF.gcd(contG)
    A = F.exact_div(BiPoly.from_poly(contF, "x"))
    B = G.exact_div(BiPoly.from_poly(contG, "x"))
    if A.deg_y < B.deg_y:
        A, B = B, A
    ring = PolyRing(F.field)
    a = A.coeff_polys("y")
    b = B.coeff_polys("y")
    while True:
        r = pseudo_rem(a, b, ring)
        if not r:
            g = BiPoly.from_coeff_polys(b, "y", F.field)
            break
        if len(r) == 1:
            g = BiPoly.one(F.field)
            break
        rb = BiPoly.from_coeff_polys(r, "y", F.field)
        rb = rb.exact_div(BiPoly.from_poly(rb.content("y"), "x"))
        a, b = b, rb.coeff_polys("y")
    g = g.exact_div(BiPoly.from_poly(g.content("y"), "x"))
    g = g * BiPoly.from_poly(cont, "x")
    return g.normalized()[1]


def _bipoly_pth_root(F: BiPoly, p: int) -> BiPoly:
    """p-th root of a perfect p-th power (finite coefficient field)."""
    k = F.field.k if F.field.kind == "F" else 1
    terms = {}
    for (i, j), c in F.terms.items():
        if i % p or j % p:
            raise ZeroPolynomial("not a perfect p-th power")
        # p-th root in F_{p^k}: c -> c^(p^(k-1))
        terms[(i // p, j // p)] = c ** (p ** (k - 1))
    return BiPoly(F.field, terms)


def _is_pth_power(F: BiPoly, p: int) -> bool:
    return all(i % p == 0 and j % p == 0 for (i, j) in F.terms)


def bipoly_squarefree(F: BiPoly):
    """Squarefree decomposition in k[x, y].

    Returns (unit, [(G, m)]) with the G pairwise coprime, squarefree,
    normalized (lex leading coefficient 1), and unit * prod G^m == F.
    Characteristic p is handled by alternating the main variable and
    extracting perfect p-th powers.  Since lex leading terms multiply, the
    unit is just the lex leading coefficient of F.
    """
    if F.is_zero:
        raise ZeroPolynomial("squarefree decomposition of 0")
    unit = F.lead_term()[1] if not F.is_zero else F.field.one
    pairs = sorted(
        _bsqf(F).items(), key=lambda gm: (gm[1], gm[0].key())
    )
    return unit, pairs


def _bsqf(F: BiPoly) -> dict:
    """{normalized squarefree factor: multiplicity} for nonzero F."""
    _, F = F.normalized()
    if F.is_constant:
        return {}
    p = F.field.characteristic
    fy = F.derivative("y")
    fx = F.derivative("x")
    if F.deg_y > 0 and not fy.is_zero:
        flip, dF = False, fy
    elif F.deg_x > 0 and not fx.is_zero:
        flip, dF = True, fx
    else:
        # both partials vanish: over a perfect field F is a p-th power
        if p and _is_pth_power(F, p):
            return {g: p * m for g, m in _bsqf(_bipoly_pth_root(F, p)).items()}
        return {F: 1}

    def back(q):
        g = q.swap() if flip else q
        return g.normalized()[1]

    W = F.swap() if flip else F  # main variable is y now
    dW = dF.swap() if flip else dF
    C = bipoly_gcd(W, dW)
    if C.is_constant:
        return {back(W): 1}
    result = {}
    w = W.exact_div(C)
    i = 1
    while not w.is_constant:
        y = bipoly_gcd(w, C)
        z = w.exact_div(y)
        if not z.is_constant:
            g = back(z)
            result[g] = result.get(g, 0) + i
        w = y
        C = C.exact_div(y)
        i += 1
    if not C.is_constant:
        for g, m in _bsqf(C.swap() if flip else C).items():
            result[g] = result.get(g, 0) + m
    return result


def poly_squarefree(f: Poly):
    """Univariate squarefree decomposition, characteristic-p aware.

    Returns (unit, [(monic squarefree g, m)]) with unit * prod g^m == f.
    """
    if f.is_zero:
        raise ZeroPolynomial("squarefree decomposition of 0")
    unit = f.lead()
    pairs = sorted(
        _usqf(f.monic()[1]).items(), key=lambda gm: (gm[1], gm[0].key())
    )
    return unit, pairs


def _usqf(f: Poly) -> dict:
    """{monic squarefree factor: multiplicity} for monic f."""
    if f.is_constant:
        return {}
    p = f.field.characteristic
    df = f.derivative()
    if df.is_zero:
        # all exponents divisible by p; take the p-th root coefficientwise
        k = f.field.k if f.field.kind == "F" else 1
        root = Poly(f.field, [c ** (p ** (k - 1)) for c in f.deflate(p).coeffs])
        return {g: p * m for g, m in _usqf(root).items()}
    C = f.gcd(df)
    if C.is_constant:
        return {f: 1}
    result = {}
    w = f.exact_div(C)
    i = 1
    while not w.is_constant:
        y = w.gcd(C)
        z = w.exact_div(y)
        if not z.is_constant:
            result[z] = result.get(z, 0) + i
        w = y
        C = C.exact_div(y)
        i += 1
    if not C.is_constant:
        for g, m in _usqf(C).items():
            result[g] = result.get(g, 0) + m
    return result


def bipoly_factor(F: BiPoly):
    """Factor a bivariate polynomial as far as the coefficient field allows.

    Over Q the factors are irreducible (multivariate rational
    factorization); over a finite field they are the squarefree
    decomposition: squarefree, pairwise coprime, possibly reducible.
    Returns (unit, [(normalized factor, multiplicity)]).
    """
    if F.field.kind != "Q":
        return bipoly_squarefree(F)
    if F.is_zero:
        raise ZeroPolynomial("factoring the zero polynomial")
    import sympy

    xs, ys = sympy.symbols("x y")
    expr = sympy.Integer(0)
    for (i, j), c in F.terms.items():
        expr += (
            sympy.Rational(c.payload.numerator, c.payload.denominator)
            * xs**i
            * ys**j
        )
    sp = sympy.Poly(expr, xs, ys, domain="QQ")
    from fractions import Fraction

    out = []
    for fac, m in sp.factor_list()[1]:
        terms = {}
        for mono, cf in fac.as_dict().items():
            terms[mono] = F.field.element(
                Fraction(int(cf.numerator), int(cf.denominator))
            )
        g = BiPoly(F.field, terms).normalized()[1]
        if not g.is_constant:
            out.append((g, m))
    unit = F.lead_term()[1]
    out.sort(key=lambda gm: (gm[1], gm[0].key()))
    return unit, out


def squarefree_decomposition(f, var: str = "y") -> list:
    """Squarefree factors with multiplicities, for Poly or BiPoly input.

    The input equals (leading coefficient) * prod factor^mult; factors are
    pairwise coprime, squarefree and normalized.  For bivariate input the
    decomposition is squarefree in both variables jointly, which implies
    squarefreeness with respect to var.
    """
    if isinstance(f, BiPoly):
        return bipoly_squarefree(f)[1]
    return poly_squarefree(f)[1]


def resultant(f: BiPoly, g: BiPoly, var: str = "y", chain: bool = False) -> BiPoly:
    """Resultant eliminating var.

    Plain form: f and g share the same two variable slots; the result only
    involves the other variable.  Chain form (chain=True, var must be "y"):
    f has slots (x, y) and g has slots (y, z); eliminating the shared middle
    variable yields a BiPoly whose slots mean (x, z).
    """
    if f.field != g.field:
        raise FieldMismatch("resultant of polynomials over different fields")
    field = f.field
    if chain:
        if var != "y":
            raise ZeroPolynomial("chain resultant eliminates the middle slot")
        ring = BiRing(field)
        fc = [BiPoly.from_poly(p, "x") for p in f.coeff_polys("y")]
        gc = [BiPoly.from_poly(p, "y") for p in g.coeff_polys("x")]
        return resultant_lists(fc, gc, ring)
    ring = PolyRing(field)
    fc = f.coeff_polys(var)
    gc = g.coeff_polys(var)
    other = "x" if var == "y" else "y"
    res = resultant_lists(fc, gc, ring)
    return BiPoly.from_poly(res, other)


# ---------------------------------------------------------------------------
# finite-field factorization (squarefree / distinct-degree / equal-degree)


def _powmod(base: Poly, e: int, mod: Poly) -> Poly:
    result = Poly.one(base.field)
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


def _random_poly(field, deg, rng):
    q = field.order
    elems = None
    coeffs = []
    for _ in range(deg + 1):
        n = rng.randrange(q)
        vec = []
        m = n
        for _ in range(field.k):
            vec.append(m % field.p)
            m //= field.p
        coeffs.append(field.element(vec if field.k > 1 else n))
    return Poly(field, coeffs)

def _edf(f: Poly, d: int, rng) -> list:
    """Split a monic squarefree product of degree-d irreducibles."""
    if f.degree == d:
        return [f]
    field = f.field
    q = field.order
    while True:
        r = _random_poly(field, f.degree - 1, rng)
        if r.degree < 1:
            continue
        if field.p == 2:
            # trace map over F_2
            u = r % f
            t = u
            for _ in range(field.k * d - 1):
                u = (u * u) % f
                t = t + u
            g = f.gcd(t)
        else:
            u = _powmod(r, (q**d - 1) // 2, f)
            g = f.gcd(u - Poly.one(field))
        if 0 < g.degree < f.degree:
            return _edf(g, d, rng) + _edf(f.exact_div(g), d, rng)


def factor_fq(f: Poly, rng=None):
    """Factor over a finite field.

    Returns (unit, [(monic irreducible, multiplicity)]), factors sorted by
    (degree, coefficient key).  Randomized splitting draws from the supplied
    PRNG (default: seed 0), and the sorted output makes the result
    reproducible regardless.
    """
    if f.field.kind != "F":
        raise FieldMismatch("factor_fq needs a finite field")
    if f.is_zero:
        raise ZeroPolynomial("factoring the zero polynomial")
    rng = rng or random.Random(0)
    unit, sqf = poly_squarefree(f)
    result = {}
    q = f.field.order
    for g, m in sqf:
        # distinct-degree, then equal-degree splitting
        x = Poly.x(f.field)
        h = x % g
        cur = g
        d = 0
        while cur.degree > 0 and cur.degree > 2 * (d + 1) - 1:
            d += 1
            h = _powmod(h, q, cur)
            gg = cur.gcd(h - x)
            if gg.degree > 0:
                for irr in _edf(gg, d, rng):
                    result[irr] = result.get(irr, 0) + m
                cur = cur.exact_div(gg)
                h = h % cur
        if cur.degree > 0:
            result[cur] = result.get(cur, 0) + m
    pairs = sorted(result.items(), key=lambda km: (km[0].degree, km[0].key()))
    return unit, pairs


def roots_in_field(f: Poly, rng=None) -> list:
    """All roots of f in its own coefficient field, with multiplicities."""
    out = []
    if f.field.kind == "Q":
        for root, m in _rational_roots(f):
            out.append((root, m))
        return out
    _, facs = factor_fq(f, rng)
    for g, m in facs:
        if g.degree == 1:
            out.append((-g.coeffs[0] / g.coeffs[1], m))
    out.sort(key=lambda rm: rm[0].key())
    return out


# ---------------------------------------------------------------------------
# rational-coefficient helpers (sympy only here)


def _to_sympy(f: Poly):
    import sympy

    x = sympy.Symbol("x")
    expr = sum(
        sympy.Rational(c.payload.numerator, c.payload.denominator) * x**i
        for i, c in enumerate(f.coeffs)
    )
    return sympy.Poly(expr, x, domain="QQ"), x


def _rational_roots(f: Poly) -> list:
    """[(root, mult)] of rational roots, sorted."""
    return rational_factor_degrees(f)[0]


def rational_factor_degrees(f: Poly) -> tuple:
    """((root, mult) list, residual degree list) over Q via factorization."""
    from fractions import Fraction

    if f.is_constant:
        return [], []
    sp, _ = _to_sympy(f)
    roots = []
    residual = []
    for fac, m in sp.factor_list()[1]:
        if fac.degree() == 1:
            c1, c0 = fac.all_coeffs()
            q1 = Fraction(int(c1.numerator), int(c1.denominator))
            q0 = Fraction(int(c0.numerator), int(c0.denominator))
            roots.append((f.field.element(-q0 / q1), m))
        elif fac.degree() >= 2:
            residual.extend([fac.degree()] * m)
    roots.sort(key=lambda rm: rm[0].key())
    residual.sort()
    return roots, residual


# ---------------------------------------------------------------------------
# embeddings of finite fields (small into big, same characteristic)

_EMBED_CACHE: dict = {}


def embedding(src: Field, dst: Field):
    """Canonical embedding F_{p^a} -> F_{p^b} (a | b): the generator is sent
    to the smallest root of the source modulus in the destination."""
    if src == dst:
        return lambda e: e
    key = (src, dst)
    if key in _EMBED_CACHE:
        return _EMBED_CACHE[key]
    if src.kind != "F" or dst.kind != "F" or src.p != dst.p:
        raise FieldMismatch("embedding needs finite fields of one characteristic")
    if dst.k % src.k:
        raise FieldMismatch(f"no embedding of degree {src.k} into degree {dst.k}")
    if src.k == 1:
        fn = lambda e: dst.element(e.payload)  # noqa: E731
        _EMBED_CACHE[key] = fn
        return fn
    mod = Poly(dst, [dst.element(c) for c in src.modulus])
    roots = roots_in_field(mod)
    theta = roots[0][0]
    pows = _power_table(theta, src.k - 1)

    def fn(e, _pows=pows, _dst=dst):
        acc = _dst.zero
        for c, tp in zip(e.payload, _pows):
            if c:
                acc = acc + tp * c
        return acc

    _EMBED_CACHE[key] = fn
    return fn


def embed_point(pt: ProjectivePoint, dst: Field) -> ProjectivePoint:
    if pt.field == dst:
        return pt
    if pt.is_infinity:
        return ProjectivePoint.infinity(dst)
    fn = embedding(pt.field, dst)
    return ProjectivePoint.finite(dst, fn(pt.a))


def embed_poly(f: Poly, dst: Field) -> Poly:
    if f.field == dst:
        return f
    fn = embedding(f.field, dst)
    return Poly(dst, [fn(c) for c in f.coeffs])


def embed_bipoly(F: BiPoly, dst: Field) -> BiPoly:
    if F.field == dst:
        return F
    fn = embedding(F.field, dst)
    return F.map_coeffs(fn, dst)


def exact_degree_over(elem: FieldElement, base_k: int) -> int:
    """Degree of elem over F_{p^base_k}, computed by Frobenius iteration."""
    field = elem.field
    if field.kind != "F":
        raise FieldMismatch("degree only defined over finite fields")
    q = field.p**base_k
    cur = elem**q
    m = 1
    while cur != elem:
        cur = cur**q
        m += 1
    return m


# ---------------------------------------------------------------------------
# binary forms and projective roots


class BinaryForm:
    """Homogeneous form of fixed degree d: sum c_i X0^i X1^(d-i).

    Coefficients ascending in the X0-exponent; trailing zeros are kept since
    they encode the multiplicity of the point at infinity.
    """

    __slots__ = ("field", "coeffs", "degree")

    def __init__(self, field, coeffs, degree=None):
        cs = [field.element(c) for c in coeffs]
        if degree is None:
            degree = len(cs) - 1
        if len(cs) != degree + 1:
            cs = cs + [field.zero] * (degree + 1 - len(cs))
        self.field = field
        self.coeffs = tuple(cs)
        self.degree = degree

    @property
    def is_zero(self):
        return all(c.is_zero for c in self.coeffs)

    def __mul__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        d = self.degree + other.degree
        out = [self.field.zero] * (d + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return BinaryForm(self.field, out, d)

    def power(self, e: int) -> "BinaryForm":
        result = BinaryForm(self.field, [self.field.one], 0)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def dehomogenize(self) -> Poly:
        """The affine polynomial p(u) = form(u, 1)."""
        return Poly(self.field, list(self.coeffs))

    def infinity_multiplicity(self) -> int:
        p = self.dehomogenize()
        if p.is_zero:
            raise ZeroPolynomial("zero form")
        return self.degree - p.degree

    def eval_point(self, pt: ProjectivePoint) -> FieldElement:
        acc = self.field.zero
        pa = _power_table(self.field.element(pt.a), self.degree)
        pb = _power_table(self.field.element(pt.b), self.degree)
        for i, c in enumerate(self.coeffs):
            if not c.is_zero:
                acc = acc + c * pa[i] * pb[self.degree - i]
        return acc

    def multiplicity_at(self, pt: ProjectivePoint) -> int:
        if pt.is_infinity:
            return self.infinity_multiplicity()
        return self.dehomogenize().root_multiplicity(self.field.element(pt.a))


def roots_p1(form: BinaryForm, ext_bound: int = 1, rng=None):
    """Roots of a binary form on the projective line.

    Returns (roots, residual): roots is a list of (point, multiplicity); over
    a finite field F_q the points range over P^1(F_{q^m}) for m <= ext_bound,
    and residual lists the degrees (with multiplicity) of irreducible factors
    whose roots lie beyond the bound.  Over Q only rational points are
    materialized and residual lists all non-rational factor degrees.
    """
    if form.is_zero:
        raise ZeroPolynomial("roots of the zero form")
    field = form.field
    p = form.dehomogenize()
    roots = []
    residual = []
    inf_m = form.infinity_multiplicity()
    if inf_m:
        roots.append((ProjectivePoint.infinity(field), inf_m))
    if p.degree >= 1:
        if field.kind == "Q":
            rat, res = rational_factor_degrees(p)
            for r, m in rat:
                roots.append((ProjectivePoint.finite(field, r), m))
            residual.extend(res)
        else:
            _, facs = factor_fq(p, rng)
            for g, m in facs:
                if g.degree == 1:
                    r = -g.coeffs[0] / g.coeffs[1]
                    roots.append((ProjectivePoint.finite(field, r), m))
                elif g.degree <= ext_bound:
                    big = _extension_of(field, g.degree)
                    gg = embed_poly(g, big)
                    for r, _ in roots_in_field(gg, rng):
                        roots.append((ProjectivePoint.finite(big, r), m))
                else:
                    residual.extend([g.degree] * m)
    roots.sort(key=lambda rm: (rm[0].field.k, rm[0].key()))
    residual.sort()
    return roots, residual


def _extension_of(field: Field, m: int) -> Field:
    """F_{q^m} for q = p^k, built over the prime field."""
    if m == 1:
        return field
    return make_extension(make_prime_field(field.p), field.k * m)


# ---------------------------------------------------------------------------
# rational functions


class RationalFunction:
    """Quotient of univariate polynomials, normalized: monic denominator,
    coprime numerator/denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero:
            raise ZeroPolynomial("zero denominator")
        if num.field != den.field:
            raise FieldMismatch("numerator and denominator over different fields")
        if num.is_zero:
            den = Poly.one(num.field)
        else:
            g = num.gcd(den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
            c, den = den.monic()
            num = num * c.inverse()
        self.num = num
        self.den = den

    @property
    def field(self):
        return self.num.field

    @classmethod
    def from_poly(cls, p: Poly):
        return cls(p, Poly.one(p.field))

    @classmethod
    def constant(cls, field, c):
        return cls(Poly.constant(field, c), Poly.one(field))

    @classmethod
    def x(cls, field):
        return cls(Poly.x(field), Poly.one(field))

    @property
    def is_zero(self):
        return self.num.is_zero

    @property
    def is_constant(self):
        return self.num.is_constant and self.den.is_constant

    @property
    def degree(self) -> int:
        """Degree as a map P^1 -> P^1."""
        return max(self.num.degree, self.den.degree)

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.field != self.field:
                raise FieldMismatch("rational functions over different fields")
            return other
        if isinstance(other, Poly):
            return RationalFunction.from_poly(other)
        if isinstance(other, (int, FieldElement)):
            return RationalFunction.constant(self.field, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, e: int):
        if e < 0:
            return (RationalFunction.constant(self.field, 1) / self) ** (-e)
        result = RationalFunction.constant(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def eval_affine(self, v: FieldElement):
        """Value at a finite point, or None at a pole."""
        d = self.den.eval(v)
        if d.is_zero:
            return None
        return self.num.eval(v) / d

    def eval_point(self, pt: ProjectivePoint) -> ProjectivePoint:
        """Value as a point of P^1 (degree >= 1 or constant)."""
        field = pt.field
        if pt.is_infinity:
            dn, dd = self.num.degree, self.den.degree
            if dn > dd:
                return ProjectivePoint.infinity(field)
            if dn < dd:
                return ProjectivePoint.finite(field, field.zero)
            return ProjectivePoint.finite(
                field, field.element(self.num.lead()) / field.element(self.den.lead())
            )
        v = field.element(pt.a)
        num = embed_or_same(self.num, field).eval(v)
        den = embed_or_same(self.den, field).eval(v)
        if den.is_zero:
            return ProjectivePoint.infinity(field)
        return ProjectivePoint.finite(field, num / den)

    def order_at(self, pt: ProjectivePoint) -> int:
        """Vanishing order (negative at a pole)."""
        if pt.is_infinity:
            return self.den.degree - self.num.degree
        a = pt.a
        return self.num.root_multiplicity(a) - self.den.root_multiplicity(a)

    def compose(self, inner: "RationalFunction") -> "RationalFunction":
        """self after inner: (self o inner)(x) = self(inner(x))."""
        inner = self._coerce(inner)
        P, Q = inner.num, inner.den
        m = max(self.num.degree, self.den.degree)
        ppow = _power_table_poly(P, m)
        qpow = _power_table_poly(Q, m)
        num = Poly.zero(self.field)
        for i, c in enumerate(self.num.coeffs):
            num = num + ppow[i] * qpow[m - i] * c
        den = Poly.zero(self.field)
        for i, c in enumerate(self.den.coeffs):
            den = den + ppow[i] * qpow[m - i] * c
        return RationalFunction(num, den)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def to_str(self, var="x"):
        if self.den == Poly.one(self.field):
            return self.num.to_str(var)
        n = self.num.to_str(var)
        d = self.den.to_str(var)

        def bare(p, s):
            nonzero = [c for c in p.coeffs if not c.is_zero]
            return len(nonzero) == 1 and not s.startswith("-") and "/" not in s

        nn = n if bare(self.num, n) else f"({n})"
        dd = d if bare(self.den, d) else f"({d})"
        return f"{nn}/{dd}"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"RF({self.to_str()})"


def _power_table_poly(p: Poly, n: int):
    out = [Poly.one(p.field)]
    for _ in range(max(0, n)):
        out.append(out[-1] * p)
    return out


def embed_or_same(f: Poly, dst: Field) -> Poly:
    if f.field == dst:
        return f
    if f.field.kind == "Q" or dst.kind == "Q":
        raise FieldMismatch("cannot embed between Q and a finite field")
    return embed_poly(f, dst)
