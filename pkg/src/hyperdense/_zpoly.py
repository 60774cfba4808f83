"""Low-level dense polynomial kernels on lists of Python ints.

Polynomials are lists of coefficients in ascending degree with no trailing
zeros; the zero polynomial is ``[]``.  Two coefficient domains are used:
plain integers (``z*`` functions) and residues modulo ``m`` (``m*`` functions,
coefficients kept in ``[0, m)``).  Large products go through Kronecker
substitution so the heavy lifting happens inside CPython's big-int multiply.
"""

from __future__ import annotations

from math import gcd

_SCHOOLBOOK = 12


def trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def deg(a):
    return len(a) - 1


# ---------------------------------------------------------------- Kronecker


def _pack(a, nb):
    return int.from_bytes(b"".join(c.to_bytes(nb, "little") for c in a), "little")


def _unpack(x, nb, count):
    raw = x.to_bytes(nb * count, "little")
    return [int.from_bytes(raw[i:i + nb], "little") for i in range(0, nb * count, nb)]


def _kron_nonneg(a, b, bound):
    # all coefficients nonnegative, every product coefficient < 2**bound
    nb = (bound + 8) // 8
    count = len(a) + len(b) - 1
    return _unpack(_pack(a, nb) * _pack(b, nb), nb, count)


def _school(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _split_sign(a):
    pos = [c if c > 0 else 0 for c in a]
    neg = [-c if c < 0 else 0 for c in a]
    return pos, neg


def zmul(a, b):
    if not a or not b:
        return []
    if min(len(a), len(b)) < _SCHOOLBOOK:
        return trim(_school(a, b))
    ma = max(abs(c) for c in a)
    mb = max(abs(c) for c in b)
    bound = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 1
    nb = (bound + 8) // 8
    count = len(a) + len(b) - 1
    ap, an = _split_sign(a)
    bp, bn = _split_sign(b)
    A = _pack(ap, nb) - _pack(an, nb)
    B = _pack(bp, nb) - _pack(bn, nb)
    C = A * B
    half = 1 << (8 * nb - 1)
    offset = int.from_bytes((b"\x00" * (nb - 1) + b"\x80") * count, "little")
    digits = _unpack(C + offset, nb, count)
    return trim([d - half for d in digits])


def zsqr(a):
    return zmul(a, a)


# ---------------------------------------------------------------- integers


def zadd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return trim(out)


def zsub(a, b):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return trim(out)


def zscale(a, c):
    if not c:
        return []
    return [x * c for x in a]


def zcontent(a):
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def zprimitive(a):
    """Primitive part with positive leading coefficient."""
    if not a:
        return []
    g = zcontent(a)
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def zeval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def zderiv(a):
    return trim([i * a[i] for i in range(1, len(a))])


def zdivmod_monic_like(a, b):
    """Division by ``b`` when every quotient step stays integral.

    Raises ``ArithmeticError`` if some step is not exact.
    """
    a = list(a)
    db = len(b) - 1
    lc = b[-1]
    if len(a) - 1 < db:
        return [], trim(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if not c:
            continue
        t, r = divmod(c, lc)
        if r:
            raise ArithmeticError("inexact integer polynomial division")
        q[i - db] = t
        for j in range(db + 1):
            a[i - db + j] -= t * b[j]
    return trim(q), trim(a[:db])


def zdiv_exact(a, b):
    q, r = zdivmod_monic_like(a, b)
    if r:
        raise ArithmeticError("polynomial division is not exact")
    return q


def zprem(a, b):
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b."""
    a = list(a)
    db = len(b) - 1
    lc = b[-1]
    if len(a) - 1 < db:
        return trim(a)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        a = [x * lc for x in a]
        if c:
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
        a.pop()
    return trim(a)


def zgcd(a, b):
    """Primitive gcd over Z[x] (positive leading coefficient)."""
    a, b = zprimitive(a), zprimitive(b)
    if not a:
        return b
    if not b:
        return a
    ca, cb = zcontent(a), zcontent(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = zprem(a, b)
        a, b = b, zprimitive(r)
    g = zprimitive(a)
    return g


def zresultant(a, b):
    """Resultant of two integer polynomials via the subresultant PRS."""
    if not a or not b:
        return 0
    ca, cb = zcontent(a), zcontent(b)
    A = [c // ca for c in a]
    B = [c // cb for c in b]
    t = ca ** (len(b) - 1) * cb ** (len(a) - 1)
    s = 1
    if len(A) < len(B):
        A, B = B, A
        if (len(A) - 1) % 2 and (len(B) - 1) % 2:
            s = -s
    if len(B) == 1:
        return s * t * B[0] ** (len(A) - 1)
    g = h = 1
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        R = zprem(A, B)
        A = B
        den = g * h ** delta
        B = [c // den for c in R]
        g = A[-1]
        if delta:
            h = g ** delta // h ** (delta - 1)
        if len(B) <= 1:
            if not B:
                return 0
            dA = len(A) - 1
            return s * t * (B[0] ** dA // h ** (dA - 1))


# ---------------------------------------------------------------- modular


def mtrim(a, m):
    return trim([c % m for c in a])


def mmul(a, b, m):
    if not a or not b:
        return []
    if min(len(a), len(b)) < _SCHOOLBOOK:
        return trim([c % m for c in _school(a, b)])
    bound = 2 * (m - 1).bit_length() + min(len(a), len(b)).bit_length() + 1
    return trim([c % m for c in _kron_nonneg(a, b, bound)])


def madd(a, b, m):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % m
    return trim(out)


def msub(a, b, m):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % m
    return trim(out)


def mscale(a, c, m):
    c %= m
    if not c:
        return []
    return trim([x * c % m for x in a])


def mdivmod(a, b, m):
    """Division with remainder; lc(b) must be a unit mod m."""
    a = [c % m for c in a]
    db = len(b) - 1
    inv = pow(b[-1], -1, m)
    if len(a) - 1 < db:
        return [], trim(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % m
        if not c:
            continue
        t = c * inv % m
        q[i - db] = t
        for j in range(db + 1):
            a[i - db + j] = (a[i - db + j] - t * b[j]) % m
    return trim(q), trim(a[:db])


def mrem(a, b, m):
    return mdivmod(a, b, m)[1]


def mmonic(a, m):
    if not a:
        return []
    inv = pow(a[-1], -1, m)
    return [c * inv % m for c in a]


def mgcd(a, b, p):
    """Monic gcd over the prime field F_p."""
    a, b = mtrim(a, p), mtrim(b, p)
    while b:
        a, b = b, mrem(a, b, p)
    return mmonic(a, p)


def mxgcd(a, b, p):
    """(g, s, t) with s*a + t*b = g monic, over F_p."""
    r0, r1 = mtrim(a, p), mtrim(b, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = mdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, msub(s0, mmul(q, s1, p), p)
        t0, t1 = t1, msub(t0, mmul(q, t1, p), p)
    if not r0:
        return [], [], []
    inv = pow(r0[-1], -1, p)
    return mscale(r0, inv, p), mscale(s0, inv, p), mscale(t0, inv, p)


def mderiv(a, m):
    return trim([i * a[i] % m for i in range(1, len(a))])


def _series_inverse(h, n, m):
    # inverse of h modulo x^n, h[0] a unit mod m
    g = [pow(h[0], -1, m)]
    k = 1
    while k < n:
        k = min(2 * k, n)
        hg = mmul(h[:k], g, m)[:k]
        corr = [(-c) % m for c in hg]
        if corr:
            corr[0] = (corr[0] + 2) % m
        else:
            corr = [2 % m]
        g = mmul(g, corr, m)[:k]
    return trim(g)


class ModRing:
    """Arithmetic in (Z/m)[x]/(f) for monic ``f`` with a cached reciprocal."""

    def __init__(self, f, m):
        self.m = m
        self.f = [c % m for c in f]
        self.n = len(f) - 1
        if self.n >= 1:
            rev = list(reversed(self.f))
            self._rinv = _series_inverse(rev, max(self.n - 1, 1), m)

    def reduce(self, a):
        m, n = self.m, self.n
        a = [c % m for c in a]
        trim(a)
        if len(a) <= n:
            return a
        if len(a) > 2 * n - 1:
            return mrem(a, self.f, m)
        k = len(a) - n  # quotient length
        rev_a = list(reversed(a))[:k]
        qr = mmul(rev_a, self._rinv[:k], m)[:k]
        qr += [0] * (k - len(qr))
        q = list(reversed(qr))
        qf = mmul(q, self.f, m)
        r = [(a[i] - (qf[i] if i < len(qf) else 0)) % m for i in range(n)]
        return trim(r)

    def mul(self, a, b):
        return self.reduce(mmul(a, b, self.m))

    def pow(self, a, e):
        result = [1 % self.m]
        base = self.reduce(a)
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return trim(result)
