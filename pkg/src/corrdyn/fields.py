"""Exact coefficient fields: Q and finite fields F_p, F_{p^k}.

Elements are immutable wrappers over a canonical payload: Fraction for Q,
an int in [0, p) for F_p and a tuple of k ints for F_{p^k} (coefficients of
1, t, ..., t^{k-1} modulo a canonical irreducible modulus).  The modulus is
the first monic irreducible of degree k when coefficient vectors are ordered
lexicographically from the highest degree down, low coefficients varying
fastest; this makes field construction reproducible across runs.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import FieldMismatch, InfiniteField, NotPrime, ParseError

_PRIME_CACHE: dict[int, "Field"] = {}
_EXT_CACHE: dict[tuple[int, int], "Field"] = {}
_MODULUS_CACHE: dict[tuple[int, int], tuple[int, ...]] = {}


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# dense int-list polynomial helpers over F_p, used only for modulus search
# (coefficients ascending, normalized: no trailing zeros)


def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        if c:
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - c * mi) % p
        a.pop()
        _ptrim(a)
    return a


def _ppowmod(base, e, m, p):
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _psub(a, b, p):
    n = max(len(a), len(b))
    out = [
        ((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
        for i in range(n)
    ]
    return _ptrim(out)


def _is_irreducible(coeffs, p):
    """Rabin test: x^(p^k) == x mod f and gcd(x^(p^(k/l)) - x, f) = 1."""
    k = len(coeffs) - 1
    x = [0, 1]
    xr = _pmod(x, coeffs, p)
    for ell in _prime_divisors(k):
        h = _psub(_ppowmod(x, p ** (k // ell), coeffs, p), xr, p)
        if len(_pgcd(coeffs, h, p)) != 1:
            return False
    return not _psub(_ppowmod(x, p**k, coeffs, p), xr, p)


def canonical_modulus(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible of degree k over F_p in the canonical order.

    Coefficient vectors (c_{k-1}, ..., c_0) are scanned lexicographically,
    so the low-degree coefficients vary fastest.  Returns ascending
    coefficients (c_0, ..., c_{k-1}, 1).
    """
    key = (p, k)
    if key in _MODULUS_CACHE:
        return _MODULUS_CACHE[key]
    for high_first in itertools.product(range(p), repeat=k):
        coeffs = list(reversed(high_first)) + [1]
        if _is_irreducible(coeffs, p):
            _MODULUS_CACHE[key] = tuple(coeffs)
            return _MODULUS_CACHE[key]
    raise AssertionError("no irreducible polynomial found (unreachable)")


class Field:
    """A coefficient field: Q, F_p or F_{p^k}."""

    __slots__ = ("kind", "p", "k", "modulus", "_red", "zero", "one")

    def __init__(self, kind, p=0, k=1, modulus=None):
        self.kind = kind  # "Q" or "F"
        self.p = p
        self.k = k
        self.modulus = modulus
        self._red = None
        if kind == "F" and k > 1:
            # reduction rows expressing t^k .. t^(2k-2) in the power basis
            self._red = []
            base_row = [(-m) % p for m in modulus[:-1]]
            self._red.append(tuple(base_row))
            for _ in range(k - 2):
                prev = self._red[-1]
                row = [0] + list(prev[:-1])
                c = prev[-1]
                if c:
                    row = [(r + c * b) % p for r, b in zip(row, base_row)]
                self._red.append(tuple(row))
        self.zero = self._make_zero()
        self.one = self._make_one()

    # -- construction of payloads

    def _make_zero(self):
        if self.kind == "Q":
            return FieldElement(self, Fraction(0))
        if self.k == 1:
            return FieldElement(self, 0)
        return FieldElement(self, (0,) * self.k)

    def _make_one(self):
        if self.kind == "Q":
            return FieldElement(self, Fraction(1))
        if self.k == 1:
            return FieldElement(self, 1)
        return FieldElement(self, (1,) + (0,) * (self.k - 1))

    def element(self, value) -> "FieldElement":
        """Coerce an int, Fraction or coefficient sequence into the field."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"element of {value.field} used in {self}")
            return value
        if self.kind == "Q":
            return FieldElement(self, Fraction(value))
        if isinstance(value, (list, tuple)):
            if self.k == 1:
                if len(value) > 1 and any(v % self.p for v in value[1:]):
                    raise FieldMismatch("vector payload in a prime field")
                v = value[0] if value else 0
                return FieldElement(self, v % self.p)
            vec = [0] * self.k
            for i, v in enumerate(value):
                if i >= self.k:
                    raise FieldMismatch("payload longer than extension degree")
                vec[i] = v % self.p
            return FieldElement(self, tuple(vec))
        v = int(value)
        if self.k == 1:
            return FieldElement(self, v % self.p)
        return FieldElement(self, (v % self.p,) + (0,) * (self.k - 1))

    def generator(self) -> "FieldElement":
        """The class of t in F_{p^k}, k > 1."""
        if self.kind != "F" or self.k == 1:
            raise FieldMismatch("generator only defined for proper extensions")
        return FieldElement(self, (0, 1) + (0,) * (self.k - 2))

    # -- structure

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "Q" else self.p

    @property
    def order(self) -> int:
        if self.kind == "Q":
            raise InfiniteField("Q is infinite")
        return self.p**self.k

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.kind == other.kind
            and self.p == other.p
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.kind, self.p, self.k, self.modulus))

    def __repr__(self):
        if self.kind == "Q":
            return "Q"
        if self.k == 1:
            return f"Fp:{self.p}"
        return f"Fp:{self.p}^{self.k}"

    def spec_string(self) -> str:
        return repr(self)


class FieldElement:
    """Immutable element of a Field; supports +, -, *, /, ** and ==."""

    __slots__ = ("field", "payload")

    def __init__(self, field, payload):
        self.field = field
        self.payload = payload

    # -- predicates and keys

    @property
    def is_zero(self) -> bool:
        f = self.field
        if f.kind == "Q":
            return self.payload == 0
        if f.k == 1:
            return self.payload == 0
        return not any(self.payload)

    def key(self):
        """Total-order key, stable across runs."""
        f = self.field
        if f.kind == "Q":
            q = self.payload
            return (q.numerator, q.denominator)
        if f.k == 1:
            return self.payload
        n = 0
        for c in reversed(self.payload):
            n = n * f.p + c
        return n

    # -- arithmetic

    def _check(self, other):
        if not isinstance(other, FieldElement):
            if isinstance(other, int):
                return self.field.element(other)
            return None
        if other.field != self.field:
            raise FieldMismatch("elements of different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        f = self.field
        if f.kind == "Q":
            return FieldElement(f, self.payload + other.payload)
        if f.k == 1:
            return FieldElement(f, (self.payload + other.payload) % f.p)
        return FieldElement(
            f, tuple((a + b) % f.p for a, b in zip(self.payload, other.payload))
        )

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        if f.kind == "Q":
            return FieldElement(f, -self.payload)
        if f.k == 1:
            return FieldElement(f, (-self.payload) % f.p)
        return FieldElement(f, tuple((-a) % f.p for a in self.payload))

    def __sub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        f = self.field
        if f.kind == "Q":
            return FieldElement(f, self.payload * other.payload)
        if f.k == 1:
            return FieldElement(f, self.payload * other.payload % f.p)
        a, b, p, k = self.payload, other.payload, f.p, f.k
        conv = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    conv[i + j] += ai * bj
        out = [c % p for c in conv[:k]]
        for idx in range(k, 2 * k - 1):
            c = conv[idx] % p
            if c:
                row = f._red[idx - k]
                for i in range(k):
                    out[i] = (out[i] + c * row[i]) % p
        return FieldElement(f, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        f = self.field
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero field element")
        if f.kind == "Q":
            return FieldElement(f, 1 / self.payload)
        if f.k == 1:
            return FieldElement(f, pow(self.payload, f.p - 2, f.p))
        # extended Euclid on coefficient lists
        p = f.p
        a = _ptrim(list(self.payload))
        m = list(f.modulus)
        r0, r1 = m, a
        s0, s1 = [], [1]
        while r1:
            # divmod r0 by r1
            q = []
            rem = list(r0)
            inv = pow(r1[-1], p - 2, p)
            q = [0] * max(1, len(rem) - len(r1) + 1)
            while rem and len(rem) >= len(r1):
                c = rem[-1] * inv % p
                shift = len(rem) - len(r1)
                q[shift] = c
                for i, ci in enumerate(r1):
                    rem[shift + i] = (rem[shift + i] - c * ci) % p
                _ptrim(rem)
            r0, r1 = r1, rem
            qs1 = _pmul(q, s1, p)
            news = [
                (a - b) % p
                for a, b in itertools.zip_longest(s0, qs1, fillvalue=0)
            ]
            s0, s1 = s1, _ptrim(news)
        # r0 = gcd (a constant, modulus irreducible)
        c_inv = pow(r0[0], p - 2, p)
        out = [(c_inv * c) % p for c in s0]
        out += [0] * (f.k - len(out))
        return FieldElement(f, tuple(out[: f.k]))

    def __truediv__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def frobenius(self) -> "FieldElement":
        """x -> x^p in positive characteristic."""
        p = self.field.characteristic
        if p == 0:
            raise FieldMismatch("Frobenius needs positive characteristic")
        return self**p

    # -- equality / hash / printing

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.element(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.payload == other.payload

    def __hash__(self):
        return hash((self.field, self.payload))

    def __str__(self):
        f = self.field
        if f.kind == "Q":
            return str(self.payload)
        if f.k == 1:
            return str(self.payload)
        terms = []
        for i in range(f.k - 1, -1, -1):
            c = self.payload[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                var = "t" if i == 1 else f"t^{i}"
                terms.append(var if c == 1 else f"{c}*{var}")
        return "+".join(terms) if terms else "0"

    def __repr__(self):
        return f"<{self} in {self.field}>"


# ---------------------------------------------------------------------------
# constructors


def rationals() -> Field:
    if "Q" not in _PRIME_CACHE:
        _PRIME_CACHE["Q"] = Field("Q")
    return _PRIME_CACHE["Q"]


def make_prime_field(p: int) -> Field:
    if p < 2:
        raise NotPrime(f"{p} < 2")
    if p in _PRIME_CACHE:
        return _PRIME_CACHE[p]
    if not is_prime(p):
        raise NotPrime(f"{p} is composite")
    f = Field("F", p=p, k=1)
    _PRIME_CACHE[p] = f
    return f


def make_extension(base: Field, k: int) -> Field:
    """F_{p^k} over a prime field, with the canonical modulus."""
    if base.kind != "F" or base.k != 1:
        raise FieldMismatch("extensions are built over prime fields")
    if k < 1:
        raise FieldMismatch("extension degree must be >= 1")
    if k == 1:
        return base
    key = (base.p, k)
    if key in _EXT_CACHE:
        return _EXT_CACHE[key]
    mod = canonical_modulus(base.p, k)
    f = Field("F", p=base.p, k=k, modulus=mod)
    _EXT_CACHE[key] = f
    return f


def parse_field_spec(text: str) -> Field:
    """Parse "Q" | "Fp:<p>" | "Fp:<p>^<k>" (whitespace tolerated)."""
    s = text.strip()
    if s == "Q":
        return rationals()
    if not s.startswith("Fp:"):
        raise ParseError(f"bad field spec {text!r}")
    body = s[3:].strip()
    if "^" in body:
        ptxt, _, ktxt = body.partition("^")
        try:
            p, k = int(ptxt.strip()), int(ktxt.strip())
        except ValueError as exc:
            raise ParseError(f"bad field spec {text!r}") from exc
    else:
        try:
            p, k = int(body), 1
        except ValueError as exc:
            raise ParseError(f"bad field spec {text!r}") from exc
    base = make_prime_field(p)
    return make_extension(base, k) if k > 1 else base


def enumerate_elements(field: Field):
    """Yield all elements in canonical order; error on Q."""
    if field.kind == "Q":
        raise InfiniteField("cannot enumerate Q")
    p, k = field.p, field.k
    if k == 1:
        for v in range(p):
            yield FieldElement(field, v)
        return
    for n in range(p**k):
        vec = []
        m = n
        for _ in range(k):
            vec.append(m % p)
            m //= p
        yield FieldElement(field, tuple(vec))


_NONRESIDUE_CACHE: dict = {}


def sqrt_fq(a: FieldElement):
    """Square root in a finite field, or None if a is not a square.

    Characteristic 2 uses the inverse Frobenius; odd characteristic runs
    Tonelli-Shanks with a cached smallest quadratic non-residue.
    """
    field = a.field
    if field.kind != "F":
        raise FieldMismatch("sqrt_fq needs a finite field element")
    if a.is_zero:
        return field.zero
    q = field.order
    if field.p == 2:
        return a ** (q // 2)
    if a ** ((q - 1) // 2) != field.one:
        return None
    t, s = q - 1, 0
    while t % 2 == 0:
        t //= 2
        s += 1
    if s == 1:
        return a ** ((q + 1) // 4)
    z = _NONRESIDUE_CACHE.get(field)
    if z is None:
        for cand in enumerate_elements(field):
            if not cand.is_zero and cand ** ((q - 1) // 2) != field.one:
                z = cand
                break
        _NONRESIDUE_CACHE[field] = z
    m = s
    c = z**t
    u = a**t
    r = a ** ((t + 1) // 2)
    while u != field.one:
        i, u2 = 0, u
        while u2 != field.one:
            u2 = u2 * u2
            i += 1
        b = c
        for _ in range(m - i - 1):
            b = b * b
        m = i
        c = b * b
        u = u * c
        r = r * b
    return r
