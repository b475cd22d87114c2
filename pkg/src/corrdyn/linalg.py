"""Exact dense linear algebra over the package's coefficient domains.

Matrices are plain lists of lists.  The elimination routines are generic:
entries only need +, -, *, /, an is_zero test, and explicit zero/one
elements, so the same code runs over field elements and over rational
functions (used as the field of fractions k(lambda) in pencil work).

Characteristic polynomials come in two independent routes, a Hessenberg
recurrence and a fraction-free determinant of X*I - M, so either can
check the other.  Minimal polynomials use Krylov chains joined by lcm.
"""

from __future__ import annotations

from .fields import Field
from .poly import Poly


def _is_zero(e):
    return e.is_zero


def identity_matrix(field: Field, n: int):
    return [
        [field.one if i == j else field.zero for j in range(n)]
        for i in range(n)
    ]


def mat_mul(a, b):
    n, m, k = len(a), len(b[0]), len(b)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for t in range(1, k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(a, v):
    out = []
    for row in a:
        acc = row[0] * v[0]
        for t in range(1, len(v)):
            acc = acc + row[t] * v[t]
        out.append(acc)
    return out


def rref(rows):
    """Reduced row echelon form of a copy of rows; returns (rref, pivot
    column list)."""
    mat = [list(r) for r in rows]
    if not mat:
        return mat, []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = None
        for i in range(r, len(mat)):
            if not _is_zero(mat[i][col]):
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = mat[r][col]
        mat[r] = [e / inv for e in mat[r]]
        for i in range(len(mat)):
            if i != r and not _is_zero(mat[i][col]):
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, zero, one):
    """Basis of the right kernel, one vector per free column, in the
    canonical rref parameterization."""
    if not rows:
        return []
    mat, pivots = rref(rows)
    ncols = len(rows[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for r, pc in enumerate(pivots):
            vec[pc] = zero - mat[r][fc]
        basis.append(vec)
    return basis


def solve(rows, rhs, zero):
    """One solution of rows * x = rhs, or None when inconsistent."""
    if not rows:
        return []
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    mat, pivots = rref(aug)
    ncols = len(rows[0])
    if ncols in pivots:
        return None
    sol = [zero] * ncols
    for r, pc in enumerate(pivots):
        sol[pc] = mat[r][ncols]
    return sol


def det_gauss(matrix, field: Field):
    """Determinant by Gaussian elimination with division."""
    n = len(matrix)
    if n == 0:
        return field.one
    mat = [list(r) for r in matrix]
    det = field.one
    for col in range(n):
        pivot = None
        for i in range(col, n):
            if not mat[i][col].is_zero:
                pivot = i
                break
        if pivot is None:
            return field.zero
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            det = -det
        det = det * mat[col][col]
        inv = mat[col][col].inverse()
        for i in range(col + 1, n):
            if not mat[i][col].is_zero:
                f = mat[i][col] * inv
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[col])]
    return det


def det_bareiss(matrix, ring_one, exact_div):
    """Fraction-free determinant (Bareiss condensation).  Entries stay in
    the ring of the inputs; exact_div(a, b) must divide exactly.  Works
    for field elements and for polynomial entries alike."""
    n = len(matrix)
    if n == 0:
        return ring_one
    mat = [list(r) for r in matrix]
    sign = 1
    prev = ring_one
    for col in range(n - 1):
        pivot = None
        for i in range(col, n):
            if not _is_zero(mat[i][col]):
                pivot = i
                break
        if pivot is None:
            return mat[0][0] - mat[0][0]
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            sign = -sign
        pc = mat[col][col]
        for i in range(col + 1, n):
            for j in range(col + 1, n):
                num = mat[i][j] * pc - mat[i][col] * mat[col][j]
                mat[i][j] = exact_div(num, prev)
            mat[i][col] = mat[i][col] - mat[i][col]
        prev = pc
    result = mat[n - 1][n - 1]
    if sign < 0:
        result = -result
    return result


def charpoly(matrix, field: Field) -> Poly:
    """Monic characteristic polynomial det(X*I - M), by similarity
    reduction to upper Hessenberg form followed by the principal-minor
    recurrence."""
    n = len(matrix)
    if n == 0:
        return Poly.one(field)
    h = [list(r) for r in matrix]
    for col in range(n - 2):
        pivot = None
        for i in range(col + 1, n):
            if not h[i][col].is_zero:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != col + 1:
            h[col + 1], h[pivot] = h[pivot], h[col + 1]
            for row in h:
                row[col + 1], row[pivot] = row[pivot], row[col + 1]
        inv = h[col + 1][col].inverse()
        for i in range(col + 2, n):
            if not h[i][col].is_zero:
                f = h[i][col] * inv
                h[i] = [a - f * b for a, b in zip(h[i], h[col + 1])]
                # inverse column operation keeps the spectrum
                for row in h:
                    row[col + 1] = row[col + 1] + f * row[i]
    x = Poly.x(field)
    ps = [Poly.one(field)]
    for m in range(1, n + 1):
        term = (x - Poly.constant(field, h[m - 1][m - 1])) * ps[m - 1]
        beta = Poly.one(field)
        for i in range(m - 1, 0, -1):
            beta = beta * Poly.constant(field, h[i][i - 1])
            term = term - beta * Poly.constant(field, h[i - 1][m - 1]) * ps[i - 1]
        ps.append(term)
    return ps[n]


def charpoly_det(matrix, field: Field) -> Poly:
    """Characteristic polynomial as a fraction-free determinant with
    polynomial entries; a route independent of charpoly."""
    n = len(matrix)
    x = Poly.x(field)
    entries = [
        [
            (x if i == j else Poly.zero(field)) - Poly.constant(field, matrix[i][j])
            for j in range(n)
        ]
        for i in range(n)
    ]
    return det_bareiss(entries, Poly.one(field), lambda a, b: a.exact_div(b))


def minpoly(matrix, field: Field) -> Poly:
    """Monic minimal polynomial via Krylov chains from each standard basis
    vector, joined by lcm."""
    n = len(matrix)
    if n == 0:
        return Poly.one(field)
    result = Poly.one(field)
    for start in range(n):
        vec = [field.one if i == start else field.zero for i in range(n)]
        chain = [vec]
        while True:
            nxt = mat_vec(matrix, chain[-1])
            coords = solve(
                [[chain[r][i] for r in range(len(chain))] for i in range(n)],
                nxt, field.zero,
            )
            if coords is not None:
                ann = Poly(field, [field.zero - c for c in coords] + [field.one])
                result = result.lcm(ann)
                break
            chain.append(nxt)
        if result.degree == n:
            break
    return result
