"""Polynomials over a number field and their factorization (norm/shift method).

A polynomial over K is a list of :class:`FieldElement` coefficients in
ascending degree with no trailing zeros.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm

from . import _zpoly as zp
from .factor import factor_over_q, factor_squarefree_integer, small_primes
from .numberfield import FieldElement, NumberField, interpolate_at_integers
from .polynomial import Poly, poly_gcd

__all__ = [
    "kpoly",
    "kp_mul",
    "kp_divmod",
    "kp_gcd",
    "kp_monic",
    "kp_eval",
    "kp_from_poly",
    "trager_norm",
    "factor_over_field",
    "roots_in_field",
]


def kpoly(K: NumberField, coeffs):
    """Build a polynomial over K from elements, rationals or coordinate lists."""
    out = []
    for c in coeffs:
        if isinstance(c, FieldElement):
            out.append(c)
        elif isinstance(c, (int, Fraction)):
            out.append(K.rational(c))
        else:
            out.append(K.element(c))
    return kp_trim(out)


def kp_trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def kp_from_poly(K: NumberField, p: Poly):
    return [K.rational(c) for c in p.coeffs]


def kp_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return kp_trim(out)


def kp_sub(a, b):
    out = list(a)
    for i, c in enumerate(b):
        if i < len(out):
            out[i] = out[i] - c
        else:
            out.append(-c)
    return kp_trim(out)


def kp_scale(a, c):
    return kp_trim([x * c for x in a])


def kp_mul(a, b):
    if not a or not b:
        return []
    out = [None] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            t = x * y
            out[i + j] = t if out[i + j] is None else out[i + j] + t
    zero = a[0].field.zero()
    return kp_trim([zero if v is None else v for v in out])


def kp_monic(a):
    if not a:
        return a
    lc = a[-1]
    if lc == 1:
        return list(a)
    inv = lc.inverse()
    return [c * inv for c in a[:-1]] + [a[0].field.one()]


def kp_divmod(a, b):
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], a
    inv = None if b[-1] == 1 else b[-1].inverse()
    q = [None] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if inv is not None:
            c = c * inv
        q[i - db] = c
        if c:
            for j in range(db):
                a[i - db + j] = a[i - db + j] - c * b[j]
    zero = b[0].field.zero()
    return kp_trim([zero if v is None else v for v in q]), kp_trim(a[:db])


def kp_gcd(a, b):
    """Monic gcd over K.

    Uses a multi-modular algorithm (Euclid over F_p[t]/(f) for word-size
    primes, CRT, rational reconstruction, exact divisibility check) when the
    defining polynomial of K is integral; plain Euclid otherwise.
    """
    a, b = kp_trim(list(a)), kp_trim(list(b))
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return kp_monic(a)
    if len(b) == 1:
        return [b[0].field.one()]
    K = a[0].field
    if K.degree > 1 and K._flc == 1:
        g = _modular_gcd(a, b)
        if g is not None:
            return g
    return _euclid_gcd(a, b)


def _euclid_gcd(a, b):
    b = kp_monic(b)
    while b:
        r = kp_divmod(a, b)[1]
        a, b = b, kp_monic(r)
    return kp_monic(a)


def _integral_rows(p):
    den = 1
    for c in p:
        den = lcm(den, c.den)
    return [[v * (den // c.den) for v in c.num] for c in p]


class _ResidueRing:
    """(Z/p)[t]/(f): arithmetic on coefficient lists mod p."""

    def __init__(self, f, p):
        self.p = p
        self.f = f
        self.ring = zp.ModRing(f, p)

    def mul(self, x, y):
        return self.ring.mul(x, y)

    def inv(self, x):
        g, s, _ = zp.mxgcd(x, self.f, self.p)
        if len(g) != 1:
            return None
        return s


def _gcd_mod_p(A, B, R):
    """Monic gcd over (Z/p)[t]/(f); None if a zero divisor shows up."""
    p = R.p

    def trim(poly):
        while poly and not poly[-1]:
            poly.pop()
        return poly

    def monic(poly):
        inv = R.inv(poly[-1])
        if inv is None:
            return None
        return [R.mul(c, inv) for c in poly[:-1]] + [[1]]

    a = trim([zp.mtrim(c, p) for c in A])
    b = trim([zp.mtrim(c, p) for c in B])
    if len(a) != len(A) or len(b) != len(B):
        return None
    b = monic(b)
    if b is None:
        return None
    while len(b) > 1:
        # a mod b, b monic
        a = list(a)
        db = len(b) - 1
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i]
            if not c:
                continue
            for j in range(db):
                a[i - db + j] = zp.msub(a[i - db + j], R.mul(c, b[j]), p)
        r = trim(a[:db])
        if not r:
            return b
        a, b = b, monic(r)
        if b is None:
            return None
    return [[1]]


def _ratrec(a, m):
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _divides(g, p):
    return not kp_divmod(p, g)[1]


def _modular_gcd(a, b):
    from .numberfield import _big_primes

    K = a[0].field
    n = K.degree
    f = K._fint
    A = _integral_rows(a)
    B = _integral_rows(b)
    best_deg = None
    acc = None
    modulus = 1
    last = None
    tries = 0
    for p in _big_primes():
        tries += 1
        if tries > 400:
            return None
        R = _ResidueRing(f, p)
        g = _gcd_mod_p(A, B, R)
        if g is None:
            continue
        d = len(g) - 1
        if d == 0:
            return [K.one()]
        if best_deg is None or d < best_deg:
            best_deg, acc, modulus, last = d, None, 1, None
        elif d > best_deg:
            continue
        flat = []
        for c in g[:-1]:
            flat.extend(list(c) + [0] * (n - len(c)))
        if acc is None:
            acc, modulus = flat, p
        else:
            inv = pow(modulus, -1, p)
            acc = [x + modulus * ((y - x) * inv % p) for x, y in zip(acc, flat)]
            modulus *= p
        rec = []
        for v in acc:
            q = _ratrec(v, modulus)
            if q is None:
                break
            rec.append(q)
        else:
            if rec == last:
                cand = [K.element(rec[i * n:(i + 1) * n]) for i in range(best_deg)] + [K.one()]
                if _divides(cand, a) and _divides(cand, b):
                    return cand
            last = rec
    return None


def kp_deriv(a):
    return kp_trim([a[i] * i for i in range(1, len(a))])


def kp_eval(a, x):
    acc = None
    for c in reversed(a):
        acc = c if acc is None else acc * x + c
    return acc if acc is not None else x * 0


def kp_equal(a, b):
    return len(a) == len(b) and all(x == y for x, y in zip(a, b))


def kp_to_poly(a) -> Poly:
    """Rational polynomial from a K-polynomial with rational coefficients."""
    return Poly(c.rational_value() for c in a)


def _shift_mod(h: Poly, s: FieldElement, g):
    """h(x + s) reduced modulo the monic K-polynomial g."""
    K = s.field
    acc = []
    for c in reversed(h.coeffs):
        # acc * (x + s) + c
        shifted = [K.zero()] + acc
        for i, v in enumerate(acc):
            shifted[i] = shifted[i] + v * s
        if shifted:
            shifted[0] = shifted[0] + c
        else:
            shifted = [K.rational(c)]
        acc = kp_trim(shifted)
        if len(acc) >= len(g):
            acc = kp_divmod(acc, g)[1]
    return acc


# ---------------------------------------------------------------- Trager


def trager_norm(G, c: int) -> Poly:
    """Norm from K to Q of G(x - c*theta), computed by evaluation and interpolation."""
    K = G[0].field
    n = K.degree
    d = len(G) - 1
    den = 1
    for g in G:
        den = lcm(den, g.den)
    gi = [zp.trim([v * (den // g.den) for v in g.num]) for g in G]
    f = K._fint
    flc = K._flc
    D = n * d
    values = []
    for x0 in range(D + 1):
        lin = zp.trim([x0, -c])
        acc = list(gi[d])
        for i in range(d - 1, -1, -1):
            acc = zp.zadd(zp.zmul(acc, lin), gi[i])
            if flc == 1 and len(acc) >= len(f):
                acc = zp.zdivmod_monic_like(acc, f)[1]
        if not acc:
            values.append(Fraction(0))
            continue
        r = zp.zresultant(f, acc)
        values.append(Fraction(r, flc ** (len(acc) - 1)))
    p = interpolate_at_integers(values)
    return p * Fraction(1, den ** n)


def _is_squarefree(p: Poly) -> bool:
    _, ints = p.integer_primitive()
    lc = ints[-1]
    tried = 0
    for q in small_primes(101):
        if lc % q == 0:
            continue
        fb = zp.mtrim(ints, q)
        if len(zp.mgcd(fb, zp.mderiv(fb, q), q)) == 1:
            return True
        tried += 1
        if tried >= 6:
            break
    return poly_gcd(p, p.derivative()).degree == 0


def _squarefree_decomposition_k(a):
    """Yun's algorithm over K; ``a`` monic."""
    out = []
    b = kp_deriv(a)
    c = kp_gcd(a, b)
    if len(c) == 1:
        return [(a, 1)]
    w = kp_divmod(a, c)[0]
    y = kp_divmod(b, c)[0]
    i = 1
    while len(w) > 1:
        z = kp_sub(y, kp_deriv(w))
        g = kp_gcd(w, z)
        if len(g) > 1:
            out.append((g, i))
        w = kp_divmod(w, g)[0]
        y = kp_divmod(z, g)[0]
        i += 1
    return out


def _factor_squarefree_k(P):
    K = P[0].field
    if len(P) == 2:
        return [P]
    if K.degree == 1:
        return [kp_from_poly(K, f) for f, _ in factor_over_q(kp_to_poly(P))]
    c = 0
    while True:
        N = trager_norm(P, c)
        if _is_squarefree(N):
            break
        c += 1
    _, ints = N.integer_primitive()
    facs = factor_squarefree_integer(ints)
    if len(facs) == 1:
        return [P]
    shift = K.gen() * c
    out = []
    remaining = P
    for h in sorted(facs, key=lambda t: (len(t), t)):
        if len(remaining) == 1:
            break
        hp = Poly(h)
        g = kp_gcd(remaining, _shift_mod(hp, shift, remaining))
        if len(g) > 1:
            out.append(g)
            remaining = kp_divmod(remaining, g)[0]
    if len(remaining) > 1:
        out.append(kp_monic(remaining))
    return out


def _factor_key(p):
    return (len(p), tuple(c.coords for c in p))


def factor_over_field(K: NumberField, p):
    """Monic irreducible factors of ``p`` over K with multiplicities.

    ``p`` may be a rational :class:`Poly` or a list of K-coefficients.  The
    norm of ``p(x - s*theta)`` is factored over Q for the first shift
    ``s = 0, 1, 2, ...`` giving a squarefree norm; factors over K are then
    gcds.  Output is ordered by degree, then by coefficient coordinates.
    """
    if isinstance(p, Poly):
        p = kp_from_poly(K, p)
    p = kp_trim(list(p))
    if len(p) < 2:
        raise ValueError("factor_over_field needs degree >= 1")
    out = []
    for part, mult in _squarefree_decomposition_k(kp_monic(p)):
        for g in _factor_squarefree_k(part):
            out.append((g, mult))
    out.sort(key=lambda t: (_factor_key(t[0]), t[1]))
    return out


def roots_in_field(K: NumberField, p):
    """Distinct roots of ``p`` lying in K, sorted by coordinates."""
    if isinstance(p, Poly):
        p = kp_from_poly(K, p)
    roots = [-g[0] for g, _ in factor_over_field(K, p) if len(g) == 2]
    roots.sort(key=lambda e: e.coords)
    return roots
