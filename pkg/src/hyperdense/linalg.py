"""Exact linear algebra over Q and over number fields.

Matrices are lists of rows.  Entries may be ``Fraction``/``int`` or any exact
field element that supports ``+ - * /`` and truthiness (zero is falsy), such
as :class:`hyperdense.numberfield.FieldElement`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

__all__ = [
    "rref",
    "rank",
    "nullspace",
    "solve",
    "bareiss_rank",
    "bareiss_det",
    "modular_rank",
    "primitive_integer_vector",
    "integer_solve",
]


def rref(matrix):
    """Reduced row echelon form.  Returns ``(rows, pivot_columns)``."""
    rows = [list(r) for r in matrix]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        piv = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], piv)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(matrix) -> int:
    return len(rref(matrix)[1])


def nullspace(matrix, ncols=None, zero=Fraction(0), one=Fraction(1)):
    """Basis of the right nullspace ``{v : matrix v = 0}``.

    ``ncols`` is needed when the matrix has no rows.  Basis vectors come from
    the RREF: one per free column, with a 1 in that column.
    """
    if matrix:
        ncols = len(matrix[0])
    elif ncols is None:
        raise ValueError("ncols required for an empty matrix")
    rows, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][f]
        basis.append(v)
    return basis


def solve(a, b):
    """One solution ``x`` of ``a x = b`` or ``None`` if inconsistent."""
    if not a:
        return None
    n = len(a[0])
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    rows, pivots = rref(aug)
    if n in pivots:
        return None
    zero = b[0] * 0 if b else Fraction(0)
    x = [zero] * n
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][n]
    return x


# ---------------------------------------------------------------- integers


def _clear_rows(matrix):
    out = []
    for row in matrix:
        den = 1
        for v in row:
            den = lcm(den, Fraction(v).denominator)
        out.append([int(Fraction(v) * den) for v in row])
    return out


def bareiss_rank(matrix) -> int:
    """Rank of a rational matrix by fraction-free elimination."""
    a = _clear_rows(matrix)
    if not a:
        return 0
    m, n = len(a), len(a[0])
    prev = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, m):
            f = a[i][c]
            row_i = a[i]
            row_r = a[r]
            a[i] = [(piv * row_i[j] - f * row_r[j]) // prev if j > c else 0 for j in range(n)]
        prev = piv
        r += 1
    return r


def bareiss_det(matrix, exact_div):
    """Determinant over a commutative ring with exact division ``exact_div(a, b)``."""
    a = [list(r) for r in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = None
    for k in range(n - 1):
        p = next((i for i in range(k, n) if a[i][k]), None)
        if p is None:
            return a[0][0] * 0
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = v if prev is None else exact_div(v, prev)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def modular_rank(matrix, p) -> int:
    """Rank modulo a prime of an integer matrix (a lower bound for the rational rank)."""
    a = [[v % p for v in row] for row in matrix]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        row_r = [v * inv % p for v in a[r]]
        a[r] = row_r
        for i in range(r + 1, m):
            f = a[i][c]
            if f:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], row_r)]
        r += 1
    return r


def primitive_integer_vector(vec):
    """Scale a rational vector to a primitive integer vector, first nonzero entry positive."""
    fr = [Fraction(v) for v in vec]
    den = 1
    for v in fr:
        den = lcm(den, v.denominator)
    ints = [int(v * den) for v in fr]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return ints
    ints = [v // g for v in ints]
    first = next(v for v in ints if v)
    if first < 0:
        ints = [-v for v in ints]
    return ints


def integer_solve(a, b):
    """Solve a square nonsingular integer system exactly; returns Fractions.

    Fraction-free forward elimination followed by rational back substitution.
    Raises ``ZeroDivisionError`` if singular.
    """
    n = len(a)
    m = [list(row) + [bv] for row, bv in zip(a, b)]
    prev = 1
    for k in range(n):
        p = next((i for i in range(k, n) if m[i][k]), None)
        if p is None:
            raise ZeroDivisionError("singular system")
        m[k], m[p] = m[p], m[k]
        piv = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            f = m[i][k]
            row_i = m[i]
            m[i] = [0] * (k + 1) + [(piv * row_i[j] - f * row_k[j]) // prev for j in range(k + 1, n + 1)]
        prev = piv
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(m[i][n])
        row = m[i]
        for j in range(i + 1, n):
            if row[j]:
                s -= row[j] * x[j]
        x[i] = s / row[i]
    return x
