"""Certified root isolation, signatures and complex conjugation on embeddings.

Real roots are isolated exactly with Sturm sequences.  Non-real roots are
approximated with mpmath and certified a posteriori: a disk of radius
``n |p(z)/p'(z)|`` around any point ``z`` contains a root, so pairwise
disjoint boxes around ``r2`` upper-half-plane disks, their mirror images and
the ``r1`` Sturm intervals account for all ``n`` roots, one per box.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import mpmath
from mpmath.libmp import to_rational

from . import _zpoly as zp
from .errors import CertificationError
from .numberfield import NumberField
from .polynomial import Poly, poly_gcd, rational_to_str

__all__ = [
    "RootBox",
    "EmbeddingSet",
    "sturm_sequence",
    "count_real_roots",
    "isolate_real_roots",
    "isolate_roots",
    "embeddings_of",
    "signature",
    "unit_rank",
    "is_totally_real",
    "is_totally_imaginary",
    "DEFAULT_PRECISION",
    "PRECISION_FLOOR",
    "set_precision_floor",
]

DEFAULT_PRECISION = Fraction(1, 2 ** 32)
PRECISION_FLOOR = Fraction(1, 2 ** 4096)
_floor = [PRECISION_FLOOR]


def set_precision_floor(bits: int) -> None:
    """Make 2^-bits the finest precision tried before certification gives up."""
    if bits < 32:
        raise ValueError("precision floor must be at least 32 bits")
    _floor[0] = Fraction(1, 2 ** bits)


# ---------------------------------------------------------------- Sturm


def _positive_primitive(a):
    g = zp.zcontent(a)
    return [c // g for c in a] if g > 1 else list(a)


def sturm_sequence(p: Poly):
    """Sturm chain of integer polynomials (positive multiples of the exact chain)."""
    _, a = p.integer_primitive()
    seq = [a, _positive_primitive(zp.zderiv(a))]
    while len(seq[-1]) > 1:
        u, v = seq[-2], seq[-1]
        r = zp.zprem(u, v)
        k = len(u) - len(v) + 1
        if v[-1] < 0 and k % 2 == 1:
            r = [-c for c in r]
        if not r:
            break
        seq.append(_positive_primitive([-c for c in r]))
    return seq


def _sign_at_exact(a, x: Fraction):
    num, den = x.numerator, x.denominator
    d = len(a) - 1
    total = 0
    for i, c in enumerate(a):
        if c:
            total += c * num ** i * den ** (d - i)
    return (total > 0) - (total < 0)


def _variations(signs):
    v = 0
    last = 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            v += 1
        last = s
    return v


def _var_at(seq, x):
    return _variations(_sign_at_exact(a, x) for a in seq)


def _var_at_infinity(seq, negative):
    signs = []
    for a in seq:
        s = 1 if a[-1] > 0 else -1
        if negative and (len(a) - 1) % 2 == 1:
            s = -s
        signs.append(s)
    return _variations(signs)


def _require_squarefree(p: Poly):
    if p.degree < 1:
        return
    if poly_gcd(p, p.derivative()).degree > 0:
        raise ValueError(f"polynomial {p} is not squarefree")


def count_real_roots(p: Poly, lo=None, hi=None, seq=None) -> int:
    """Number of distinct real roots in (lo, hi]; ``None`` means infinity."""
    if p.degree < 1:
        return 0
    seq = seq or sturm_sequence(p)
    vlo = _var_at_infinity(seq, True) if lo is None else _var_at(seq, Fraction(lo))
    vhi = _var_at_infinity(seq, False) if hi is None else _var_at(seq, Fraction(hi))
    return vlo - vhi


def _cauchy_bound(p: Poly) -> Fraction:
    lc = abs(p.lc)
    m = max((abs(c) for c in p.coeffs[:-1]), default=Fraction(0))
    b = 1 + m / lc
    return Fraction(int(b) + 1)


def _refine_real(a, lo, hi, width):
    """Shrink [lo, hi] holding one simple root in (lo, hi) to width <= width.

    ``a(hi)`` must be nonzero; ``lo`` may be a neighbouring root, in which
    case the sign just right of it is the opposite of the sign at ``hi``.
    """
    slo = _sign_at_exact(a, lo) or -_sign_at_exact(a, hi)
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = _sign_at_exact(a, mid)
        if s == 0:
            return mid, mid
        if s == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def isolate_real_roots(p: Poly, width=None):
    """Disjoint closed rational intervals, one per real root, ascending.

    Each interval is certified by a Sturm count of exactly one; exact rational
    roots come back as degenerate intervals.  ``width`` optionally bounds the
    interval widths.
    """
    _require_squarefree(p)
    if p.degree < 1:
        return []
    seq = sturm_sequence(p)
    a = seq[0]
    total = count_real_roots(p, seq=seq)
    if total == 0:
        return []
    B = _cauchy_bound(p)
    found = []
    stack = [(-B, B)]
    while stack:
        lo, hi = stack.pop()
        c = _var_at(seq, lo) - _var_at(seq, hi)
        if c == 0:
            continue
        if c == 1:
            found.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    found.sort()
    out = []
    for lo, hi in found:
        if _sign_at_exact(a, hi) == 0:
            out.append((hi, hi))
            continue
        # root lies in the open interval (lo, hi); keep it away from lo
        lo2, hi2 = _refine_real(a, lo, hi, (hi - lo) / 4)
        # move off a shared endpoint (previous root or previous interval) so intervals are disjoint
        while lo2 < hi2 and (_sign_at_exact(a, lo2) == 0 or (out and out[-1][1] >= lo2)):
            lo2, hi2 = _refine_real(a, lo2, hi2, (hi2 - lo2) / 2)
        out.append((lo2, hi2))
    if width is not None:
        out = [
            iv if iv[0] == iv[1] else _refine_real(a, iv[0], iv[1], Fraction(width))
            for iv in out
        ]
    if len(out) != total:
        raise CertificationError("real root isolation lost a root")
    return out


# ---------------------------------------------------------------- boxes


@dataclass(frozen=True)
class RootBox:
    """Closed axis-parallel box containing exactly one root."""

    re: tuple
    im: tuple

    @property
    def center(self):
        return ((self.re[0] + self.re[1]) / 2, (self.im[0] + self.im[1]) / 2)

    @property
    def width(self):
        return max(self.re[1] - self.re[0], self.im[1] - self.im[0])

    def is_real(self):
        return self.im == (0, 0)

    def disjoint(self, other: "RootBox") -> bool:
        return (
            self.re[1] < other.re[0]
            or other.re[1] < self.re[0]
            or self.im[1] < other.im[0]
            or other.im[1] < self.im[0]
        )

    def conjugate(self) -> "RootBox":
        return RootBox(self.re, (-self.im[1], -self.im[0]))

    def contains(self, re, im) -> bool:
        return self.re[0] <= re <= self.re[1] and self.im[0] <= im <= self.im[1]

    def to_json(self):
        return {
            "re": [rational_to_str(self.re[0]), rational_to_str(self.re[1])],
            "im": [rational_to_str(self.im[0]), rational_to_str(self.im[1])],
        }


@dataclass(frozen=True)
class EmbeddingSet:
    """All complex roots of a defining polynomial, boxed and in canonical order."""

    poly: Poly
    boxes: tuple
    r1: int
    r2: int
    conjugation: tuple

    @property
    def degree(self):
        return len(self.boxes)

    def approx(self, i: int, bits: int = 200):
        """Root ``i`` as an mpmath complex, Newton-refined to about ``bits`` bits."""
        return refine_root(self.poly, self.boxes[i], bits)

    def to_json(self):
        return {
            "signature": {"r1": self.r1, "r2": self.r2},
            "boxes": [b.to_json() for b in self.boxes],
            "conjugation": list(self.conjugation),
        }


def refine_root(p: Poly, box: RootBox, bits: int):
    coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(p.coeffs)]
    dcoeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(p.derivative().coeffs)]
    with mpmath.workprec(bits + 32):
        cre, cim = box.center
        z = mpmath.mpc(mpmath.mpf(cre.numerator) / cre.denominator, mpmath.mpf(cim.numerator) / cim.denominator)
        if box.is_real():
            z = mpmath.mpf(z.real)
        for _ in range(8 + bits.bit_length() * 2):
            fz = mpmath.polyval(coeffs, z)
            dz = mpmath.polyval(dcoeffs, z)
            if dz == 0:
                break
            step = fz / dz
            z = z - step
            if abs(step) < mpmath.mpf(2) ** (-bits - 8) * (1 + abs(z)):
                break
        return +z


# ---------------------------------------------------------------- complex roots


def _gauss_eval(a, x, y):
    """Exact p(x + iy) for an integer polynomial and rational x, y."""
    re, im = Fraction(0), Fraction(0)
    for c in reversed(a):
        re, im = re * x - im * y + c, re * y + im * x
    return re, im


def _sqrt_upper(q: Fraction) -> Fraction:
    """A rational upper bound for sqrt(q), q >= 0, within a relative 2^-60."""
    if q == 0:
        return Fraction(0)
    # resolution 2^-shift must sit well below sqrt(q) ~ 2^((nb - db) / 2)
    shift = 64 + max(0, (q.denominator.bit_length() - q.numerator.bit_length()) // 2 + 1)
    num = q.numerator << (2 * shift)
    r = isqrt(num // q.denominator) + 1
    return Fraction(r, 1 << shift)


def _to_fraction(x, grid_bits):
    # exact value of the mpf, rounded onto the dyadic grid 2^-grid_bits
    num, den = to_rational(x._mpf_)
    return Fraction(round(Fraction(num, den) * (1 << grid_bits)), 1 << grid_bits)


def _try_certify(a, n, r2, eps, bits):
    if r2 == 0:
        return []
    coeffs = list(reversed(a))
    with mpmath.workprec(bits + 64):
        try:
            approx = mpmath.polyroots(coeffs, maxsteps=200 + 20 * n, extraprec=bits + 64 + 10 * n)
        except mpmath.libmp.NoConvergence:
            return None
    approx = sorted(approx, key=lambda z: -mpmath.im(z))[:r2]
    da = zp.zderiv(a)
    grid = bits + 8
    discs = []
    for z in approx:
        # .real/.imag keep full precision; mpmath.re/im would round to 53 bits here
        cx = _to_fraction(z.real, grid)
        cy = _to_fraction(z.imag, grid)
        if cy <= 0:
            return None
        pr, pi = _gauss_eval(a, cx, cy)
        dr, di = _gauss_eval(da, cx, cy)
        dn = dr * dr + di * di
        if dn == 0:
            return None
        r = _sqrt_upper(Fraction(n * n) * (pr * pr + pi * pi) / dn)
        if 2 * r > eps or r >= cy:
            return None
        discs.append((cx, cy, r))
    boxes = [RootBox((cx - r, cx + r), (cy - r, cy + r)) for cx, cy, r in discs]
    for i in range(len(boxes)):
        for j in range(i + 1, len(boxes)):
            if not boxes[i].disjoint(boxes[j]):
                return None
    return boxes


def isolate_roots(p: Poly, precision=DEFAULT_PRECISION, floor=None) -> EmbeddingSet:
    """Certified boxes for all complex roots of a squarefree polynomial.

    The working precision is squared after each failed attempt until it
    passes ``floor`` (default: the value set by :func:`set_precision_floor`).
    """
    if floor is None:
        floor = _floor[0]
    _require_squarefree(p)
    n = p.degree
    _, a = p.integer_primitive()
    precision = Fraction(precision)
    eps = min(precision, DEFAULT_PRECISION)
    real_ivs = isolate_real_roots(p, width=precision)
    r1 = len(real_ivs)
    if (n - r1) % 2:
        raise CertificationError("odd number of non-real roots")
    r2 = (n - r1) // 2
    while True:
        bits = max(53, eps.denominator.bit_length() - eps.numerator.bit_length() + 1)
        upper = _try_certify(a, n, r2, eps, bits)
        if upper is not None:
            break
        if eps <= floor:
            raise CertificationError(f"could not certify roots of {p} above precision floor")
        eps = max(eps * eps, floor)
    real_boxes = [RootBox((lo, hi), (Fraction(0), Fraction(0))) for lo, hi in real_ivs]
    upper = _order_upper(upper)
    boxes = list(real_boxes)
    conj = list(range(r1))
    for b in upper:
        i = len(boxes)
        boxes.append(b.conjugate())
        boxes.append(b)
        conj.extend([i + 1, i])
    return EmbeddingSet(p, tuple(boxes), r1, r2, tuple(conj))


def _order_upper(boxes):
    """Order upper-half-plane boxes by real part; overlapping real ranges tie on imaginary part."""
    boxes = sorted(boxes, key=lambda b: b.re[0])
    clusters = []
    for b in boxes:
        if clusters and b.re[0] <= max(c.re[1] for c in clusters[-1]):
            clusters[-1].append(b)
        else:
            clusters.append([b])
    out = []
    for cl in clusters:
        out.extend(sorted(cl, key=lambda b: b.im[0]))
    return out


def embeddings_of(K: NumberField, precision=DEFAULT_PRECISION) -> EmbeddingSet:
    """Certified embedding set of K; cached per field at the default precision."""
    key = ("embeddings", Fraction(precision))
    if key not in K.cache:
        K.cache[key] = isolate_roots(K.poly, precision)
    return K.cache[key]


def signature(K) -> tuple:
    """(r1, r2) by Sturm count alone."""
    p = K.poly if isinstance(K, NumberField) else K
    r1 = count_real_roots(p)
    return r1, (p.degree - r1) // 2


def is_totally_real(K) -> bool:
    r1, r2 = signature(K)
    return r2 == 0


def is_totally_imaginary(K) -> bool:
    r1, _ = signature(K)
    return r1 == 0


def unit_rank(K: NumberField, num_finite_places: int = 0) -> int:
    """Free rank r1 + r2 - 1 + #finite places of the S-unit group."""
    if num_finite_places < 0:
        raise ValueError("number of finite places must be nonnegative")
    r1, r2 = signature(K)
    return r1 + r2 - 1 + num_finite_places
