"""Sparse multivariate polynomials with exact coefficients.

Coefficients are ``Fraction`` or :class:`~hyperdense.numberfield.FieldElement`;
a polynomial is a mapping from exponent tuples to nonzero coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement

from .polynomial import rational_to_str

__all__ = ["MPoly", "monomials"]


def monomials(nvars: int, degree: int):
    """Exponent tuples of total degree ``degree`` in lexicographically descending order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


class MPoly:
    """Immutable sparse polynomial in ``nvars`` variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars, j, one=Fraction(1)):
        e = [0] * nvars
        e[j] = 1
        return cls(nvars, {tuple(e): one})

    @classmethod
    def linear_form(cls, coeffs):
        """sum_j coeffs[j] * x_j."""
        n = len(coeffs)
        terms = {}
        for j, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[j] = 1
                terms[tuple(e)] = c
        return cls(n, terms)

    # basics ---------------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    @property
    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.constant(self.nvars, other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                v = out[e] + c
                if v:
                    out[e] = v
                else:
                    del out[e]
            else:
                out[e] = c
        return MPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            if not other:
                return MPoly(self.nvars)
            return MPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                if e in out:
                    out[e] = out[e] + v
                else:
                    out[e] = v
        return MPoly(self.nvars, out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        if result is None:
            one = next(iter(self.terms.values())) ** 0 if self.terms else Fraction(1)
            return MPoly.constant(self.nvars, one)
        return result

    def exact_div(self, other: "MPoly") -> "MPoly":
        """Exact quotient; raises ``ArithmeticError`` if ``other`` does not divide."""
        if not other.terms:
            raise ZeroDivisionError("division by zero polynomial")
        lead_e = max(other.terms)
        lead_c = other.terms[lead_e]
        rem = dict(self.terms)
        q = {}
        while rem:
            e = max(rem)
            if any(a < b for a, b in zip(e, lead_e)):
                raise ArithmeticError("multivariate division is not exact")
            c = rem[e] / lead_c
            mono = tuple(a - b for a, b in zip(e, lead_e))
            q[mono] = c
            for e2, c2 in other.terms.items():
                t = tuple(a + b for a, b in zip(mono, e2))
                v = rem.get(t, 0) - c * c2 if t in rem else -(c * c2)
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return MPoly(self.nvars, q)

    # evaluation and conversion ---------------------------------------------

    def __call__(self, point):
        acc = None
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x ** k
            acc = t if acc is None else acc + t
        return acc if acc is not None else 0 * point[0]

    def map_coeffs(self, fn) -> "MPoly":
        return MPoly(self.nvars, {e: fn(c) for e, c in self.terms.items()})

    def linear_substitute(self, matrix):
        """Substitute x_i -> sum_j matrix[i][j] * y_j."""
        n = len(matrix[0]) if matrix else self.nvars
        forms = [MPoly.linear_form(row) for row in matrix]
        acc = MPoly(n)
        for e, c in self.terms.items():
            t = MPoly.constant(n, c)
            for f, k in zip(forms, e):
                if k:
                    t = t * f ** k
            acc = acc + t
        return acc

    def to_json(self):
        """Terms as ``[[exponents], coefficient]`` in descending lexicographic order."""
        out = []
        for e, c in self.sorted_terms():
            out.append([list(e), _coeff_json(c)])
        return out

    def format(self, var="x"):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{var}{i}" if k == 1 else f"{var}{i}^{k}" for i, k in enumerate(e) if k
            )
            if isinstance(c, Fraction):
                if mono and c == 1:
                    body, sign = mono, "+"
                elif mono and c == -1:
                    body, sign = mono, "-"
                else:
                    sign = "-" if c < 0 else "+"
                    a = abs(c)
                    body = f"{a}*{mono}" if mono else str(a)
            else:
                sign = "+"
                body = f"({c.as_poly().format('a')})" + (f"*{mono}" if mono else "")
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"MPoly({self.format()})"


def _coeff_json(c):
    if isinstance(c, (int, Fraction)):
        return rational_to_str(c)
    return c.to_json()
