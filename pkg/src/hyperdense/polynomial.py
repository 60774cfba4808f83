"""Univariate polynomials over Q with exact rational coefficients.

``Poly`` is an immutable value type.  Arithmetic that is sensitive to
coefficient growth (gcd, resultant) clears denominators and runs on integer
coefficient lists from :mod:`hyperdense._zpoly`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from . import _zpoly as zp

__all__ = [
    "Poly",
    "poly_gcd",
    "squarefree_part",
    "squarefree_decomposition",
    "resultant",
    "discriminant",
    "cyclotomic",
    "rational_to_str",
    "rational_from_str",
]


def rational_to_str(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def rational_from_str(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(str(s))


class Poly:
    """Polynomial with ``Fraction`` coefficients in ascending degree."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self._hash = None

    # construction ---------------------------------------------------------

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def from_roots(cls, roots) -> "Poly":
        p = cls((1,))
        for r in roots:
            p = p * cls((-Fraction(r), 1))
        return p

    @classmethod
    def from_json(cls, data) -> "Poly":
        return cls(rational_from_str(c) for c in data)

    def to_json(self) -> list:
        return [rational_to_str(c) for c in self.coeffs]

    # basic properties -----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        return Poly(c / lc for c in self.coeffs)

    def __getitem__(self, i) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def integer_primitive(self):
        """Return ``(content, ints)`` with ``self == content * Poly(ints)``.

        ``ints`` is primitive with positive leading coefficient.
        """
        if not self.coeffs:
            return Fraction(0), []
        den = 1
        for c in self.coeffs:
            den = lcm(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = zp.zcontent(ints)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), [v // g for v in ints]

    def to_ints(self):
        """Coefficients as ints; raises if some coefficient is not integral."""
        if not self.is_integral():
            raise ValueError("polynomial has non-integral coefficients")
        return [c.numerator for c in self.coeffs]

    # arithmetic -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __add__(self, other):
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self.coeffs)
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        ca, ia = self.integer_primitive()
        cb, ib = other.integer_primitive()
        c = ca * cb
        return Poly(c * v for v in zp.zmul(ia, ib))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = Poly((1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        a = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        if len(a) - 1 < db:
            return Poly(), self
        inv = 1 / b[-1]
        q = [Fraction(0)] * (len(a) - db)
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i]
            if not c:
                continue
            t = c * inv
            q[i - db] = t
            for j in range(db + 1):
                a[i - db + j] -= t * b[j]
        return Poly(q), Poly(a[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def derivative(self) -> "Poly":
        return Poly(i * self.coeffs[i] for i in range(1, len(self.coeffs)))

    def __call__(self, x):
        """Horner evaluation; ``x`` may be any ring element supporting + and *."""
        if not self.coeffs:
            return 0 * x
        acc = self.coeffs[-1] + 0 * x
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def shift(self, s) -> "Poly":
        """p(x + s)."""
        return self.compose(Poly((s, 1)))

    def scale_variable(self, s) -> "Poly":
        """p(s * x)."""
        s = Fraction(s)
        return Poly(c * s ** i for i, c in enumerate(self.coeffs))

    def reverse(self) -> "Poly":
        return Poly(reversed(self.coeffs))

    # presentation ---------------------------------------------------------

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return self.format("x")

    def format(self, var="x") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def sort_key(self):
        return (self.degree, self.coeffs)


def _coerce(p) -> Poly:
    if isinstance(p, Poly):
        return p
    return Poly((p,))


# ------------------------------------------------------------------ algorithms


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q; ``gcd(0, 0) = 0``."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    _, ia = a.integer_primitive()
    _, ib = b.integer_primitive()
    return Poly(zp.zgcd(ia, ib)).monic()


def squarefree_part(p: Poly) -> Poly:
    """``p / gcd(p, p')`` made monic."""
    if p.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    if p.degree == 0:
        return Poly((1,))
    g = poly_gcd(p, p.derivative())
    return p.exact_div(g).monic()


def squarefree_decomposition(p: Poly):
    """Yun's algorithm: list of ``(factor, multiplicity)``, factors monic squarefree."""
    if p.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    out = []
    if p.degree == 0:
        return out
    a = p.monic()
    b = a.derivative()
    c = poly_gcd(a, b)
    w = a.exact_div(c)
    y = b.exact_div(c)
    i = 1
    while w.degree > 0:
        z = y - w.derivative()
        g = poly_gcd(w, z)
        if g.degree > 0:
            out.append((g, i))
        w = w.exact_div(g)
        y = z.exact_div(g)
        i += 1
    return out


def resultant(a: Poly, b: Poly) -> Fraction:
    """Res(a, b) = lc(a)^deg(b) * prod b(alpha) over the roots alpha of a."""
    if a.is_zero() and b.is_zero():
        raise ValueError("resultant of two zero polynomials")
    if a.is_zero() or b.is_zero():
        return Fraction(0)
    ca, ia = a.integer_primitive()
    cb, ib = b.integer_primitive()
    r = zp.zresultant(ia, ib)
    return Fraction(r) * ca ** b.degree * cb ** a.degree


def discriminant(p: Poly) -> Fraction:
    n = p.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(p, p.derivative()) / p.lc


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> Poly:
    """The n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = zp.zdiv_exact(num, cyclotomic(d).to_ints())
    return Poly(num)


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def content_gcd(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
