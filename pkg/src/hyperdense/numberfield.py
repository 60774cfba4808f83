"""Absolute number fields Q[x]/(f), exact element arithmetic, and subfield maps.

Elements are stored as an integer numerator vector in the power basis of the
generator together with one positive common denominator.  Relative
extensions are flattened: a field M "over k" is an absolute field together
with a :class:`SubfieldEmbedding` of k into M.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import NamedTuple

from . import _zpoly as zp
from .errors import ReducibleError
from .factor import factor_over_q
from .linalg import bareiss_det, integer_solve, solve
from .polynomial import Poly, squarefree_part

__all__ = [
    "NumberField",
    "FieldElement",
    "SubfieldEmbedding",
    "PrimitiveElement",
    "make_field",
    "rational_field",
    "element_minimal_polynomial",
    "norm_form",
    "primitive_element",
    "interpolate_at_integers",
]


def _normalize(num, den):
    if den < 0:
        num = [-v for v in num]
        den = -den
    g = den
    for v in num:
        if g == 1:
            break
        g = gcd(g, v)
    if g > 1:
        num = [v // g for v in num]
        den //= g
    return num, den


class NumberField:
    """The field Q[x]/(f) for a monic irreducible ``f`` with rational coefficients."""

    __slots__ = ("poly", "degree", "provenance", "_fint", "_flc", "_hash", "cache")

    def __init__(self, poly, *, check=True, provenance=None):
        if not isinstance(poly, Poly):
            poly = Poly(poly)
        if poly.degree < 1:
            raise ValueError("defining polynomial must have degree >= 1")
        if not poly.is_monic():
            raise ValueError(f"defining polynomial {poly} is not monic")
        if check and poly.degree > 1:
            factors = factor_over_q(poly)
            if len(factors) != 1 or factors[0][1] != 1:
                raise ReducibleError(poly, factors[0][0])
        self.poly = poly
        self.degree = poly.degree
        self.provenance = provenance
        _, ints = poly.integer_primitive()
        self._fint = ints
        self._flc = ints[-1]
        self._hash = hash(("NumberField", poly))
        self.cache = {}

    # identity -------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.poly == other.poly

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"NumberField({self.poly})"

    def is_rational(self) -> bool:
        return self.degree == 1

    def to_json(self) -> dict:
        return {"min_poly": self.poly.to_json()}

    # element construction -------------------------------------------------

    def _make(self, num, den=1):
        n = self.degree
        num = list(num)
        if len(num) > n:
            num, extra = self._reduce(num)
            den *= extra
        num = num + [0] * (n - len(num))
        num, den = _normalize(num, den)
        return FieldElement(self, tuple(num), den)

    def _reduce(self, a):
        """Reduce an integer coefficient list modulo f; returns (ints, extra_den)."""
        f = self._fint
        if self._flc == 1:
            r = zp.zdivmod_monic_like(a, f)[1]
            return r, 1
        k = len(a) - len(f) + 1
        return zp.zprem(a, f), self._flc ** k

    def element(self, coords) -> "FieldElement":
        fr = [Fraction(c) for c in coords]
        if len(fr) > self.degree:
            return self.from_poly(Poly(fr))
        den = 1
        for c in fr:
            den = lcm(den, c.denominator)
        return self._make([int(c * den) for c in fr], den)

    def from_poly(self, p: Poly) -> "FieldElement":
        if p.is_zero():
            return self.zero()
        content, ints = p.integer_primitive()
        e = self._make(ints, 1)
        return e * content

    def rational(self, q) -> "FieldElement":
        q = Fraction(q)
        return self._make([q.numerator], q.denominator)

    def zero(self):
        return self._make([], 1)

    def one(self):
        return self._make([1], 1)

    def gen(self):
        if self.degree == 1:
            return self.rational(-self.poly.coeffs[0])
        return self._make([0, 1], 1)

    def from_json(self, coords) -> "FieldElement":
        from .polynomial import rational_from_str

        return self.element([rational_from_str(c) for c in coords])


def rational_field() -> NumberField:
    """Q presented as Q[x]/(x)."""
    return NumberField(Poly.x(), check=False, provenance="Q")


class FieldElement:
    """An element of a :class:`NumberField` (immutable)."""

    __slots__ = ("field", "num", "den", "_minpoly", "_hash")

    def __init__(self, field, num, den):
        self.field = field
        self.num = num
        self.den = den
        self._minpoly = None
        self._hash = None

    # views ----------------------------------------------------------------

    @property
    def coords(self):
        d = self.den
        return tuple(Fraction(v, d) for v in self.num)

    def as_poly(self) -> Poly:
        return Poly(self.coords)

    def to_json(self) -> list:
        from .polynomial import rational_to_str

        return [rational_to_str(c) for c in self.coords]

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self):
        return any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.num[0], self.den)

    def __repr__(self):
        return f"FieldElement({self.as_poly().format('a')} in {self.field.poly})"

    def sort_key(self):
        return self.coords

    # comparison -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            num = list(self.num)
            num[0] = num[0] * q.denominator + q.numerator * self.den
            if q.denominator != 1:
                num = [num[0]] + [v * q.denominator for v in num[1:]]
            return self.field._make(num, self.den * q.denominator)
        other = self._coerce(other)
        a, b = self.num, other.num
        da, db = self.den, other.den
        if da == db:
            return self.field._make([x + y for x, y in zip(a, b)], da)
        return self.field._make([x * db + y * da for x, y in zip(a, b)], da * db)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-v for v in self.num), self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-Fraction(other))
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return self.field._make([v * q.numerator for v in self.num], self.den * q.denominator)
        other = self._coerce(other)
        prod = zp.zmul(zp.trim(list(self.num)), zp.trim(list(other.num)))
        return self.field._make(prod, self.den * other.den)

    __rmul__ = __mul__

    def mul_gen(self):
        """Multiply by the field generator (cheap shift and one reduction step)."""
        return self.field._make([0] + list(self.num), self.den)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a number field")
        if self.is_rational():
            return self.field.rational(Fraction(self.den, self.num[0]))
        K = self.field
        a = zp.trim(list(self.num))
        if K._flc == 1:
            s, r = _modular_inverse(a, K._fint)
            # self = a/den and a * s = r (mod f)
            return K._make(s, r) * self.den
        return self._inverse_linear()

    def _inverse_linear(self):
        n = self.field.degree
        raw = []
        cur = self.field._make(list(self.num), 1)
        for _ in range(n):
            raw.append(cur)
            cur = cur.mul_gen()
        scale = 1
        for c in raw:
            scale = lcm(scale, c.den)
        cols = [[v * (scale // c.den) for v in c.num] for c in raw]
        mat = [[cols[j][i] for j in range(n)] for i in range(n)]
        x = integer_solve(mat, [scale] + [0] * (n - 1))
        return self.field.element(x) * self.den

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # invariants -----------------------------------------------------------

    def charpoly(self) -> Poly:
        """Characteristic polynomial of multiplication by this element."""
        key = ("charpoly", self.num, self.den)
        cache = self.field.cache
        if key in cache:
            return cache[key]
        f = self.field._fint
        n = self.field.degree
        a = zp.trim(list(self.num))
        d = self.den
        lc = self.field._flc
        values = []
        for x0 in range(n + 1):
            h = zp.zsub([x0 * d], a)
            r = zp.zresultant(f, h) if h else 0
            # Res(F, h) with F = lc * f  ->  lc^deg(h) * Res(f, h)
            r = Fraction(r, lc ** max(len(h) - 1, 0)) if h else Fraction(0)
            values.append(r / Fraction(d) ** n)
        p = interpolate_at_integers(values)
        cache[key] = p
        return p

    def minimal_polynomial(self) -> Poly:
        if self._minpoly is None:
            if self.is_rational():
                self._minpoly = Poly((-self.rational_value(), 1))
            else:
                self._minpoly = squarefree_part(self.charpoly())
        return self._minpoly

    def norm(self) -> Fraction:
        n = self.field.degree
        if self.is_zero():
            return Fraction(0)
        a = zp.trim(list(self.num))
        r = zp.zresultant(self.field._fint, a)
        return Fraction(r, self.field._flc ** (len(a) - 1)) / Fraction(self.den) ** n

    def trace(self) -> Fraction:
        cp = self.charpoly()
        return -cp[self.field.degree - 1]


_BIG_PRIMES = []


def _big_primes():
    """Primes just below 2**62, descending, extended on demand."""
    from .factor import _is_prime_big

    i = 0
    while True:
        if i == len(_BIG_PRIMES):
            p = _BIG_PRIMES[-1] - 2 if _BIG_PRIMES else (1 << 62) - 1
            while not _is_prime_big(p):
                p -= 2
            _BIG_PRIMES.append(p)
        yield _BIG_PRIMES[i]
        i += 1


def _modular_inverse(a, f):
    """(s, r) with a*s = r mod f, r = Res(f, a) != 0, by CRT over word-size primes."""
    r = zp.zresultant(f, a)
    if r == 0:
        raise ZeroDivisionError("element is not invertible")
    s_acc = None
    modulus = 1
    for p in _big_primes():
        if r % p == 0:
            continue
        g, s, _ = zp.mxgcd(a, f, p)
        if len(g) != 1:
            continue
        s = [c * r % p for c in s]
        s += [0] * (len(f) - 1 - len(s))
        if s_acc is None:
            s_acc, modulus = s, p
        else:
            inv = pow(modulus, -1, p)
            s_acc = [x + modulus * ((y - x) * inv % p) for x, y in zip(s_acc, s)]
            modulus *= p
        cand = [x - modulus if x > modulus // 2 else x for x in s_acc]
        check = zp.zdivmod_monic_like(zp.zmul(a, zp.trim(list(cand))), f)[1]
        if check == zp.trim([r]):
            return cand, r


def interpolate_at_integers(values) -> Poly:
    """The polynomial of degree < len(values) taking ``values[i]`` at ``x = i``."""
    fr = [Fraction(v) for v in values]
    den = 1
    for v in fr:
        den = lcm(den, v.denominator)
    ints = [int(v * den) for v in fr]
    D = len(ints) - 1
    # forward differences, then sum d_k * (D!/k!) * x(x-1)...(x-k+1), divided by D!
    diffs = []
    cur = ints
    while cur:
        diffs.append(cur[0])
        cur = [cur[i + 1] - cur[i] for i in range(len(cur) - 1)]
    fact = [1] * (D + 1)
    for i in range(1, D + 1):
        fact[i] = fact[i - 1] * i
    acc = [0] * (D + 1)
    falling = [1]
    for k, dk in enumerate(diffs):
        if dk:
            m = dk * (fact[D] // fact[k])
            for i, b in enumerate(falling):
                acc[i] += m * b
        nxt = [0] * (len(falling) + 1)
        for i, b in enumerate(falling):
            nxt[i + 1] += b
            nxt[i] -= k * b
        falling = nxt
    scale = Fraction(1, fact[D] * den)
    return Poly(c * scale for c in acc)


def make_field(p) -> NumberField:
    """Q[x]/(p) for a monic irreducible polynomial ``p``.

    Raises :class:`ReducibleError` naming a factor when ``p`` is reducible and
    ``ValueError`` when ``p`` is not monic.
    """
    return NumberField(p if isinstance(p, Poly) else Poly(p))


def element_minimal_polynomial(e: FieldElement) -> Poly:
    return e.minimal_polynomial()


class SubfieldEmbedding:
    """An embedding ``source -> target`` given by the image of the source generator."""

    __slots__ = ("source", "target", "image", "_powers")

    def __init__(self, source: NumberField, target: NumberField, image: FieldElement, check=True):
        if image.field != target:
            raise ValueError("image must lie in the target field")
        if check and not source.poly(image).is_zero():
            raise ValueError("image is not a root of the source defining polynomial")
        self.source = source
        self.target = target
        self.image = image
        self._powers = None

    def __repr__(self):
        return f"SubfieldEmbedding({self.source.poly} -> {self.target.poly}, gen -> {self.image.as_poly().format('a')})"

    def _image_powers(self):
        if self._powers is None:
            pw = [self.target.one()]
            for _ in range(1, self.source.degree):
                pw.append(pw[-1] * self.image)
            self._powers = pw
        return self._powers

    def __call__(self, e) -> FieldElement:
        """Image of a source element (or rational) in the target."""
        if isinstance(e, (int, Fraction)):
            return self.target.rational(e)
        if e.field != self.source:
            raise ValueError("element not in the source field")
        acc = self.target.zero()
        for c, p in zip(e.coords, self._image_powers()):
            if c:
                acc = acc + p * c
        return acc

    def preimage(self, e: FieldElement):
        """The source element mapping to ``e``, or ``None`` if ``e`` is not in the image."""
        pw = self._image_powers()
        n = self.target.degree
        mat = [[p.coords[i] for p in pw] for i in range(n)]
        x = solve(mat, list(e.coords))
        if x is None:
            return None
        return self.source.element(x)

    def compose(self, inner: "SubfieldEmbedding") -> "SubfieldEmbedding":
        """``self o inner``: inner.source -> self.target."""
        return SubfieldEmbedding(inner.source, self.target, self(inner.image), check=False)

    def to_json(self) -> dict:
        return {
            "source": self.source.poly.to_json(),
            "target": self.target.poly.to_json(),
            "image": self.image.to_json(),
        }


def identity_embedding(K: NumberField) -> SubfieldEmbedding:
    return SubfieldEmbedding(K, K, K.gen(), check=False)


def rational_embedding(K: NumberField) -> SubfieldEmbedding:
    """The embedding of Q (presented by x) into K."""
    return SubfieldEmbedding(rational_field(), K, K.zero(), check=False)


def subfield_from_element(e: FieldElement) -> SubfieldEmbedding:
    """Q(e) as an abstract field with its embedding into ``e.field``."""
    mp = e.minimal_polynomial()
    if mp.degree == 1:
        return rational_embedding(e.field)
    F = NumberField(mp, check=False)
    return SubfieldEmbedding(F, e.field, e, check=False)


class PrimitiveElement(NamedTuple):
    """Result of :func:`primitive_element`.

    ``field`` is Q(e1, e2); ``first``/``second`` embed Q(e1)/Q(e2) into it;
    ``ambient`` embeds it back into the field the inputs came from.
    """

    field: NumberField
    first: SubfieldEmbedding
    second: SubfieldEmbedding
    ambient: SubfieldEmbedding


def _powers_in(gamma: FieldElement, d: int):
    pw = [gamma.field.one()]
    for _ in range(1, d):
        pw.append(pw[-1] * gamma)
    return pw


def express_in_powers(gamma: FieldElement, d: int, e: FieldElement):
    """Rational coordinates of ``e`` in the basis 1, gamma, ..., gamma^(d-1), or None."""
    pw = _powers_in(gamma, d)
    n = gamma.field.degree
    mat = [[p.coords[i] for p in pw] for i in range(n)]
    return solve(mat, list(e.coords))


def primitive_element(K: NumberField, e1: FieldElement, e2: FieldElement) -> PrimitiveElement:
    """The compositum Q(e1, e2) inside K, generated by e1 + c*e2 for the least c >= 0."""
    if e1.field != K or e2.field != K:
        raise ValueError("elements must lie in K")
    c = 0
    while True:
        gamma = e1 + e2 * c if c else e1
        mp = gamma.minimal_polynomial()
        d = mp.degree
        x2 = express_in_powers(gamma, d, e2)
        if x2 is not None:
            break
        c += 1
    if d == 1:
        F = rational_field()
        amb = rational_embedding(K)
        im1 = F.zero()
        im2 = F.zero()
    else:
        F = NumberField(mp, check=False, provenance=("compositum", c))
        amb = SubfieldEmbedding(F, K, gamma, check=False)
        im2 = F.element(x2)
        im1 = F.gen() - im2 * c
    s1 = subfield_from_element(e1).source
    s2 = subfield_from_element(e2).source
    first = SubfieldEmbedding(s1, F, im1 if s1.degree > 1 else F.zero(), check=False)
    second = SubfieldEmbedding(s2, F, im2 if s2.degree > 1 else F.zero(), check=False)
    return PrimitiveElement(F, first, second, amb)


# ---------------------------------------------------------------- norm forms


def norm_form(M: NumberField, base_degree_over_k: int, basis):
    """The absolute norm form N(x_0 a_0 + ... + x_{m-1} a_{m-1}) over Q.

    Returned as an :class:`hyperdense.mpoly.MPoly` in m variables with rational
    coefficients.  Only k = Q is supported, so ``base_degree_over_k`` must
    equal the degree of M.
    """
    from .mpoly import MPoly

    n = M.degree
    if base_degree_over_k != n:
        raise NotImplementedError("norm_form computes absolute norms; use component_norm_form for k != Q")
    basis = list(basis)
    if len(basis) != n:
        raise ValueError("basis must have [M:Q] elements")
    mat = [[b.coords[i] for b in basis] for i in range(n)]
    from .linalg import rank

    if rank(mat) < n:
        raise ValueError("basis elements are linearly dependent")
    # multiplication matrix of sum x_j a_j: column i is (sum x_j a_j) * gen^i
    gen_pows = [M.one()]
    for _ in range(1, n):
        gen_pows.append(gen_pows[-1].mul_gen())
    entries = [[MPoly.zero(n) for _ in range(n)] for _ in range(n)]
    for j, b in enumerate(basis):
        xj = MPoly.variable(n, j)
        for i, g in enumerate(gen_pows):
            col = (b * g).coords
            for r in range(n):
                if col[r]:
                    entries[r][i] = entries[r][i] + xj * col[r]
    return bareiss_det(entries, lambda a, b: a.exact_div(b))
