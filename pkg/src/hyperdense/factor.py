"""Factorization of polynomials over Q.

Classic Zassenhaus: factor modulo a good odd prime (Cantor-Zassenhaus),
Hensel-lift the modular factors past a Mignotte-type coefficient bound, then
recombine by subset search.  The finite-field routines are internal; the
public entry points are :func:`factor_over_q` and :func:`is_irreducible`.
"""

from __future__ import annotations

import random
from itertools import combinations
from math import isqrt

from . import _zpoly as zp
from .polynomial import Poly, squarefree_decomposition

__all__ = ["factor_over_q", "is_irreducible", "factor_squarefree_integer", "small_primes"]


def small_primes(start=3):
    """Primes >= start, ascending (unbounded generator)."""
    p = max(2, start)
    while True:
        if _is_prime(p):
            yield p
        p += 1


def _is_prime_big(n):
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = isqrt(n)
    f = 3
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


# ------------------------------------------------------------ finite fields


def _pth_root(f, p):
    return [f[i] for i in range(0, len(f), p)]


def sqf_mod_p(f, p):
    """Squarefree decomposition over F_p of a monic polynomial."""
    f = zp.mmonic(zp.mtrim(f, p), p)
    out = []
    if len(f) <= 1:
        return out
    df = zp.mderiv(f, p)
    if not df:
        return [(g, m * p) for g, m in sqf_mod_p(_pth_root(f, p), p)]
    c = zp.mgcd(f, df, p)
    w = zp.mdivmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = zp.mgcd(w, c, p)
        z = zp.mdivmod(w, y, p)[0]
        if len(z) > 1:
            out.append((zp.mmonic(z, p), i))
        i += 1
        w = y
        c = zp.mdivmod(c, y, p)[0]
    if len(c) > 1:
        out.extend((g, m * p) for g, m in sqf_mod_p(_pth_root(c, p), p))
    return out


def ddf_mod_p(f, p):
    """Distinct-degree factorization of a monic squarefree ``f`` over F_p.

    Returns ``[(product of all irreducible factors of degree d, d), ...]``.
    """
    f = zp.mmonic(zp.mtrim(f, p), p)
    out = []
    d = 0
    ring = zp.ModRing(f, p)
    h = ring.reduce([0, 1])
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = ring.pow(h, p)
        g = zp.mgcd(f, zp.msub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, d))
            f = zp.mdivmod(f, g, p)[0]
            ring = zp.ModRing(f, p)
            h = ring.reduce(h)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def edf_mod_p(f, d, p, rng=None):
    """Split a product of distinct degree-``d`` irreducibles over F_p."""
    f = zp.mmonic(f, p)
    n = len(f) - 1
    if n == d:
        return [f]
    if rng is None:
        rng = random.Random(0x5EED ^ p ^ (n << 8))
    ring = zp.ModRing(f, p)
    while True:
        a = zp.trim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        if p == 2:
            t, b = a, a
            for _ in range(d - 1):
                b = ring.mul(b, b)
                t = zp.madd(t, b, 2)
            cand = t
        else:
            b = ring.pow(a, (p ** d - 1) // 2)
            cand = zp.msub(b, [1], p)
        g = zp.mgcd(f, cand, p)
        if 1 < len(g) < len(f):
            h = zp.mdivmod(f, g, p)[0]
            return edf_mod_p(g, d, p, rng) + edf_mod_p(h, d, p, rng)


def factor_mod_p(f, p):
    """Complete factorization over F_p: list of (monic irreducible, multiplicity)."""
    out = []
    for g, m in sqf_mod_p(f, p):
        for h, d in ddf_mod_p(g, p):
            for u in edf_mod_p(h, d, p):
                out.append((u, m))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return out


def _squarefree_mod(f, p):
    fb = zp.mtrim(f, p)
    if len(fb) != len(f):
        return False
    return len(zp.mgcd(fb, zp.mderiv(fb, p), p)) == 1


# ------------------------------------------------------------ Hensel lifting


def _sym(c, m):
    c %= m
    return c - m if c > m // 2 else c


def hensel_lift(f, factors, p, k):
    """Lift monic modular factors of ``f`` (f = lc * prod mod p) to mod p**k."""
    target = p ** k
    return hensel_lift_mod(zp.mtrim(f, target), factors, p, target)


def hensel_lift_mod(f, factors, p, target):
    # same recursion when f is already a residue polynomial mod target
    lc = f[-1]
    if len(factors) == 1:
        inv = pow(lc, -1, target)
        return [zp.mscale(f, inv, target)]
    half = len(factors) // 2
    g0 = [lc % p]
    for u in factors[:half]:
        g0 = zp.mmul(g0, u, p)
    h0 = [1]
    for u in factors[half:]:
        h0 = zp.mmul(h0, u, p)
    _, s, t = zp.mxgcd(g0, h0, p)
    g, h, _, _, _ = _hensel_pair_mod(f, g0, h0, s, t, p, target)
    return hensel_lift_mod(g, factors[:half], p, target) + hensel_lift_mod(h, factors[half:], p, target)


def _hensel_pair_mod(f, g, h, s, t, m, target):
    """Lift f = g*h (h monic) and s*g + t*h = 1 from modulus m up to target."""
    while m < target:
        m2 = min(m * m, target)
        e = zp.msub(zp.mtrim(f, m2), zp.mmul(g, h, m2), m2)
        q, r = zp.mdivmod(zp.mmul(s, e, m2), h, m2)
        g = zp.madd(zp.madd(g, zp.mmul(t, e, m2), m2), zp.mmul(q, g, m2), m2)
        h = zp.madd(h, r, m2)
        b = zp.msub(zp.madd(zp.mmul(s, g, m2), zp.mmul(t, h, m2), m2), [1], m2)
        c, d = zp.mdivmod(zp.mmul(s, b, m2), h, m2)
        s = zp.msub(s, d, m2)
        t = zp.msub(zp.msub(t, zp.mmul(t, b, m2), m2), zp.mmul(c, g, m2), m2)
        m = m2
    return zp.mtrim(g, target), zp.mtrim(h, target), s, t, m


# ------------------------------------------------------------ Zassenhaus


def _coefficient_bound(f):
    n = len(f) - 1
    norm2 = isqrt(sum(c * c for c in f)) + 1
    return abs(f[-1]) * (2 ** n) * norm2


def _choose_prime(f, tries=5):
    lc = f[-1]
    best = None
    found = 0
    for p in small_primes(3):
        if lc % p == 0 or not _squarefree_mod(f, p):
            continue
        pattern = ddf_mod_p(f, p)
        count = sum((len(g) - 1) // d for g, d in pattern)
        if best is None or count < best[0]:
            best = (count, p, pattern)
        found += 1
        if count == 1 or found >= tries:
            break
    return best


def factor_squarefree_integer(f):
    """Irreducible factors over Z of a primitive squarefree integer polynomial.

    Factors are primitive with positive leading coefficient.
    """
    f = zp.zprimitive(list(f))
    n = len(f) - 1
    if n <= 1:
        return [f]
    # x-power factor first: cheap and keeps the modular step clean
    if f[0] == 0:
        return [[0, 1]] + factor_squarefree_integer(f[1:])
    count, p, pattern = _choose_prime(f)
    if count == 1:
        return [f]
    modular = []
    for g, d in pattern:
        modular.extend(edf_mod_p(g, d, p))
    bound = 2 * _coefficient_bound(f) + 1
    k = 1
    while p ** k < bound:
        k += 1
    pk = p ** k
    lifted = hensel_lift(f, modular, p, k)
    return _recombine(f, lifted, pk)


def _recombine(f, lifted, pk):
    result = []
    remaining = list(range(len(lifted)))
    s = 1
    while 2 * s <= len(remaining):
        progress = False
        lc = f[-1]
        for subset in combinations(remaining, s):
            # constant-term screen
            c0 = lc
            for i in subset:
                c0 = c0 * lifted[i][0] % pk
            c0 = _sym(c0, pk)
            if c0 == 0 or (f[0] and (lc * f[0]) % c0):
                continue
            g = [lc % pk]
            for i in subset:
                g = zp.mmul(g, lifted[i], pk)
            g = zp.zprimitive([_sym(c, pk) for c in g])
            try:
                q = zp.zdiv_exact(f, g)
            except ArithmeticError:
                continue
            result.append(g)
            f = zp.zprimitive(q)
            remaining = [i for i in remaining if i not in subset]
            progress = True
            break
        if not progress:
            s += 1
    result.append(f)
    return result


def factor_over_q(p: Poly):
    """Factor ``p`` into monic irreducibles over Q with multiplicities.

    The product of ``factor**multiplicity`` equals ``p`` up to its leading
    coefficient.  Ordering: by degree, then coefficient tuple.
    """
    if p.is_zero() or p.degree < 1:
        raise ValueError("factor_over_q needs a polynomial of degree >= 1")
    out = []
    for part, mult in squarefree_decomposition(p):
        _, ints = part.integer_primitive()
        for g in factor_squarefree_integer(ints):
            out.append((Poly(g).monic(), mult))
    out.sort(key=lambda t: (t[0].sort_key(), t[1]))
    return out


def is_irreducible(p: Poly) -> bool:
    if p.is_zero() or p.degree < 1:
        return False
    if p.degree == 1:
        return True
    _, ints = p.integer_primitive()
    if len(zp.mgcd(ints, zp.zderiv(ints), 1_000_003)) > 1:
        # could share a factor with its derivative; settle exactly
        if squarefree_decomposition(p) != [(p.monic(), 1)]:
            return False
    return len(factor_squarefree_integer(ints)) == 1
