"""Splitting fields over Q, their automorphism groups and fixed fields.

A splitting field is built by adjoining one irreducible factor at a time with
the norm/shift trick, so the final generator is an integer combination of
roots.  Automorphisms are found exactly: images of the adjoined roots are
searched among roots of the same rational factor and each candidate is kept
only if it maps every intermediate generator to a root of its minimal
polynomial.  Numerics are used only to label roots by the certified root
boxes of the input polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import chain
from math import lcm

import mpmath

from .embeddings import embeddings_of, isolate_roots
from .errors import CertificationError, DegreeCapError
from .factor import factor_over_q
from .fieldpoly import (
    factor_over_field,
    kp_divmod,
    kp_from_poly,
    kp_gcd,
    kp_monic,
    kp_mul,
    kp_add,
    trager_norm,
    _is_squarefree,
)
from .numberfield import (
    FieldElement,
    NumberField,
    SubfieldEmbedding,
    rational_embedding,
    rational_field,
)
from .polynomial import Poly, squarefree_part

__all__ = [
    "DEFAULT_DEGREE_CAP",
    "SplittingField",
    "PermutationGroup",
    "splitting_field",
    "galois_closure",
    "automorphism_group",
    "complex_conjugation",
    "fixed_field",
    "subgroups_between",
    "compose",
    "inverse",
    "identity_perm",
]

DEFAULT_DEGREE_CAP = 24


# ---------------------------------------------------------------- permutations


def identity_perm(n: int) -> tuple:
    return tuple(range(n))


def compose(a: tuple, b: tuple) -> tuple:
    """``a o b``: apply ``b`` first."""
    return tuple(a[i] for i in b)


def inverse(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def _closure(gens, n):
    ident = identity_perm(n)
    elems = {ident}
    frontier = [ident]
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(elems)


@dataclass(frozen=True)
class PermutationGroup:
    """A finite permutation group on root indices ``0 .. degree-1``."""

    degree: int
    elements: tuple

    @classmethod
    def from_elements(cls, degree, elements):
        return cls(degree, tuple(sorted(set(elements))))

    @classmethod
    def generated(cls, degree, gens):
        return cls.from_elements(degree, _closure(gens, degree))

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> tuple:
        return identity_perm(self.degree)

    @property
    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    @property
    def generators(self) -> tuple:
        """A deterministic generating set chosen greedily in sorted element order."""
        gens = []
        span = {self.identity}
        for g in self.elements:
            if g not in span:
                gens.append(g)
                span = set(_closure(gens, self.degree))
        return tuple(gens)

    def __contains__(self, g) -> bool:
        return tuple(g) in self.element_set

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def is_subgroup_of(self, other: "PermutationGroup") -> bool:
        return self.element_set <= other.element_set

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(compose(a, b) == compose(b, a) for a in gens for b in gens)

    def is_cyclic(self) -> bool:
        n = self.order
        return any(len(_closure([g], self.degree)) == n for g in self.elements)

    def stabilizer(self, point: int) -> "PermutationGroup":
        return PermutationGroup(self.degree, tuple(g for g in self.elements if g[point] == point))

    def product(self, other: "PermutationGroup") -> "PermutationGroup":
        """The subgroup generated by both groups."""
        return PermutationGroup.generated(self.degree, self.generators + other.generators)

    def to_json(self):
        return {
            "degree": self.degree,
            "order": self.order,
            "abelian": self.is_abelian(),
            "cyclic": self.is_cyclic(),
            "generators": [list(g) for g in self.generators],
            "elements": [list(g) for g in self.elements],
        }


# ---------------------------------------------------------------- splitting fields


@dataclass(eq=False)
class SplittingField:
    """The splitting field N over Q of ``source`` with every root written in N.

    ``roots[i]`` is the root lying in the i-th certified box of ``source``
    under the canonical (first-listed) embedding of N.  The generator of N is
    ``sum(c * roots[i] for i, c in combination)``; ``tower`` records the
    intermediate generators as ``(combination, minimal polynomial)`` pairs.
    """

    source: Poly
    field: NumberField
    roots: tuple
    root_boxes: object
    combination: tuple
    tower: tuple
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def degree(self) -> int:
        return self.field.degree

    @property
    def conjugation_pairing(self) -> tuple:
        return self.root_boxes.conjugation

    def generator_image(self, perm) -> FieldElement:
        """Image of the generator of N under the automorphism ``perm``."""
        key = ("gen", tuple(perm))
        if key not in self._cache:
            acc = self.field.zero()
            for i, c in self.combination:
                acc = acc + self.roots[perm[i]] * c
            self._cache[key] = acc
        return self._cache[key]

    def image_powers(self, perm):
        key = ("powers", tuple(perm))
        if key not in self._cache:
            self._cache[key] = _powers(self.generator_image(perm), self.field.degree)
        return self._cache[key]

    def apply(self, perm, e: FieldElement) -> FieldElement:
        """The automorphism ``perm`` applied to an element of N."""
        if e.field.degree == 1:
            return e
        return _eval_on_powers(e, self.image_powers(perm))

    def root_index(self, e: FieldElement) -> int:
        for i, r in enumerate(self.roots):
            if r == e:
                return i
        raise ValueError("element is not a listed root")

    def locate_root(self, poly: Poly, index: int = 0) -> FieldElement:
        """The root of ``poly`` in N sitting in box ``index`` of ``poly``'s own canonical order."""
        poly = squarefree_part(poly)
        boxes = isolate_roots(poly)
        mine = [r for r in self.roots if poly(r).is_zero()]
        if len(mine) != poly.degree:
            raise ValueError("polynomial does not split into listed roots")
        target = boxes.approx(index, 120)
        best = min(mine, key=lambda r: abs(self.numeric(r, 0, 120) - target))
        return best

    def numeric(self, e: FieldElement, embedding: int = 0, bits: int = 120):
        """Value of ``e`` under the embedding sending the generator to root ``embedding`` of its polynomial."""
        if self.field.degree == 1:
            v = e.rational_value()
            return mpmath.mpc(mpmath.mpf(v.numerator) / v.denominator)
        z = embeddings_of(self.field).approx(embedding, bits + 40)
        with mpmath.workprec(bits + 40):
            acc = mpmath.mpc(0)
            for c in reversed(e.coords):
                acc = acc * z + mpmath.mpf(c.numerator) / c.denominator
            return acc


def _powers(x: FieldElement, n: int):
    pw = [x.field.one()]
    for _ in range(1, n):
        pw.append(pw[-1] * x)
    return pw


def _eval_on_powers(e: FieldElement, pw) -> FieldElement:
    """e(x) given the powers 1, x, ..., x^(n-1); one common-denominator pass."""
    L = 1
    for p, c in zip(pw, e.num):
        if c:
            L = lcm(L, p.den)
    n = len(pw)
    acc = [0] * n
    for p, c in zip(pw, e.num):
        if c:
            s = c * (L // p.den)
            for i, v in enumerate(p.num):
                if v:
                    acc[i] += s * v
    return pw[0].field._make(acc, e.den * L)


def _integral_monic(p: Poly):
    """(q, d) with q integral monic and roots of q equal to d times roots of p."""
    m = p.monic()
    d = 1
    for c in m.coeffs:
        d = lcm(d, c.denominator)
    n = m.degree
    q = Poly(c * d ** (n - i) for i, c in enumerate(m.coeffs))
    return q, d


def _express_old_generator(K: NumberField, K2: NumberField, g, c: int):
    """Image in K2 of the generator of K, where K2 = K(y) and K2.gen = y + c*gen(K)."""
    if K.degree == 1:
        return K2.zero()
    gp = K2.gen()
    # G(gp - c t, t) as a polynomial in t over K2
    lin = [gp, K2.rational(-c)]
    acc = []
    power = [K2.one()]
    for coeff in g:
        term = kp_mul(kp_from_poly(K2, coeff.as_poly()), power)
        acc = kp_add(acc, term)
        power = kp_mul(power, lin)
    h = kp_gcd(kp_from_poly(K2, K.poly), acc)
    if len(h) != 2:
        raise CertificationError("primitive element gcd is not linear")
    h = kp_monic(h)
    return -h[0]


def _map_poly(pol, phi):
    return [phi(c) for c in pol]


def _build(p: Poly, cap: int):
    q, d = _integral_monic(p)
    K = rational_field()
    roots = []
    gen_combo = {}
    tower = []
    remaining = [kp_from_poly(K, f) for f, _ in factor_over_q(q)]
    while True:
        rest = []
        for g in remaining:
            if len(g) == 2:
                roots.append(-kp_monic(g)[0])
            else:
                rest.append(g)
        if not rest:
            break
        g = min(rest, key=lambda t: (len(t), tuple(c.coords for c in t)))
        new_degree = K.degree * (len(g) - 1)
        if new_degree > cap:
            raise DegreeCapError(
                f"splitting field degree would exceed cap {cap}",
                partial_degrees=[t[1].degree for t in tower] + [new_degree],
            )
        if K.degree == 1:
            c = 0
            norm = Poly(e.rational_value() for e in g)
        else:
            c = 0
            while True:
                norm = trager_norm(g, c)
                if _is_squarefree(norm):
                    break
                c += 1
        K2 = NumberField(norm, check=False, provenance=("splitting", new_degree))
        old = _express_old_generator(K, K2, g, c)
        phi = (lambda e, old=old: e.as_poly()(old) if e.field.degree > 1 else K2.rational(e.rational_value()))
        y = K2.gen() - old * c
        roots = [phi(r) for r in roots]
        idx = len(roots)
        roots.append(y)
        combo = {i: v * c for i, v in gen_combo.items()}
        combo[idx] = combo.get(idx, 0) + 1
        gen_combo = {i: v for i, v in combo.items() if v}
        tower.append((tuple(sorted(gen_combo.items())), norm))
        mapped = []
        for h in rest:
            h2 = _map_poly(h, phi)
            if h is g:
                h2 = kp_divmod(h2, [-y, K2.one()])[0]
            if len(h2) > 1:
                mapped.append(h2)
        remaining = []
        for h in mapped:
            for f, _ in factor_over_field(K2, h):
                remaining.append(f)
        K = K2
    if d != 1:
        # roots of q are d times roots of p
        roots = [r / d for r in roots]
        tower = [(tuple((i, c * d) for i, c in combo), mp) for combo, mp in tower]
    return K, roots, tower


def _label_roots(source: Poly, N: NumberField, roots):
    """Permutation placing each exact root into its certified box of ``source``."""
    boxes = isolate_roots(source)
    n = len(roots)
    if N.degree == 1:
        vals = [mpmath.mpc(mpmath.mpf(r.rational_value().numerator) / r.rational_value().denominator) for r in roots]
    else:
        z = embeddings_of(N).approx(0, 160)
        vals = []
        with mpmath.workprec(200):
            for r in roots:
                acc = mpmath.mpc(0)
                for c in reversed(r.coords):
                    acc = acc * z + mpmath.mpf(c.numerator) / c.denominator
                vals.append(acc)
    targets = [boxes.approx(i, 160) for i in range(n)]
    order = [None] * n
    used = set()
    for j, v in enumerate(vals):
        dist = sorted((abs(v - t), i) for i, t in enumerate(targets))
        best = dist[0][1]
        if best in used or (len(dist) > 1 and dist[0][0] * 1000 > dist[1][0]):
            raise CertificationError("ambiguous numeric labeling of roots")
        used.add(best)
        order[best] = j
    return boxes, order


_SPLIT_CACHE: dict = {}


def splitting_field(p: Poly, max_degree: int = DEFAULT_DEGREE_CAP) -> SplittingField:
    """Splitting field over Q of the squarefree part of ``p``; cached per polynomial."""
    if not isinstance(p, Poly):
        p = Poly(p)
    if p.degree < 1:
        raise ValueError("splitting field of a constant")
    source = squarefree_part(p).monic()
    hit = _SPLIT_CACHE.get(source)
    if hit is not None:
        if hit.degree > max_degree:
            raise DegreeCapError(
                f"splitting field degree {hit.degree} exceeds cap {max_degree}",
                partial_degrees=[t[1].degree for t in hit.tower],
            )
        return hit
    N, roots, tower = _build(source, max_degree)
    boxes, order = _label_roots(source, N, roots)
    relabel = {old: new for new, old in enumerate(order)}
    roots = tuple(roots[order[i]] for i in range(len(order)))
    tower = tuple(
        (tuple(sorted((relabel[i], c) for i, c in combo)), mp) for combo, mp in tower
    )
    combination = tower[-1][0] if tower else ()
    S = SplittingField(source, N, roots, boxes, combination, tower)
    _SPLIT_CACHE[source] = S
    return S


def galois_closure(K: NumberField, max_degree: int = DEFAULT_DEGREE_CAP) -> SplittingField:
    return splitting_field(K.poly, max_degree)


# ---------------------------------------------------------------- automorphisms


def _rational_factor_classes(S: SplittingField):
    """Class label per root: index of the rational irreducible factor it annihilates."""
    facs = [f for f, _ in factor_over_q(S.source)]
    labels = []
    for r in S.roots:
        for j, f in enumerate(facs):
            if f(r).is_zero():
                labels.append(j)
                break
    return labels


def _full_group(S: SplittingField) -> PermutationGroup:
    if "group" in S._cache:
        return S._cache["group"]
    n = len(S.roots)
    N = S.field
    if N.degree == 1:
        G = PermutationGroup(n, (identity_perm(n),))
        S._cache["group"] = G
        return G
    labels = _rational_factor_classes(S)
    adjoined = []
    for combo, _ in S.tower:
        for i, _c in combo:
            if i not in adjoined:
                adjoined.append(i)
    # the j-th tower stage uses the first j+1 adjoined roots
    found_images = []

    def partial_value(combo, assign):
        acc = N.zero()
        for i, c in combo:
            acc = acc + S.roots[assign[i]] * c
        return acc

    def search(level, assign):
        if level == len(adjoined):
            found_images.append(dict(assign))
            return
        i = adjoined[level]
        combo, mp = S.tower[level]
        for cand in range(n):
            if labels[cand] != labels[i] or cand in assign.values():
                continue
            assign[i] = cand
            if mp(partial_value(combo, assign)).is_zero():
                search(level + 1, assign)
            del assign[i]

    search(0, {})
    index = {r: k for k, r in enumerate(S.roots)}
    perms = []
    for assign in found_images:
        img = partial_value(S.combination, assign)
        pw = _powers(img, N.degree)
        perm = tuple(index[_eval_on_powers(r, pw)] for r in S.roots)
        S._cache[("gen", perm)] = img
        S._cache[("powers", perm)] = pw
        perms.append(perm)
    G = PermutationGroup.from_elements(n, perms)
    if G.order != N.degree:
        raise CertificationError(f"found {G.order} automorphisms for a field of degree {N.degree}")
    S._cache["group"] = G
    return G


def automorphism_group(S: SplittingField, over: SubfieldEmbedding | None = None) -> PermutationGroup:
    """Automorphisms of N fixing ``over`` pointwise (all of Gal(N/Q) when omitted)."""
    G = _full_group(S)
    if over is None or over.source.degree == 1:
        return G
    if over.target != S.field:
        raise ValueError("subfield must embed into the splitting field")
    x = over.image
    return PermutationGroup(G.degree, tuple(g for g in G.elements if S.apply(g, x) == x))


def _embedding_labeling(S: SplittingField, embedding: int):
    """pi with root i landing in box pi[i] under embedding ``embedding`` of N."""
    if embedding == 0 or S.field.degree == 1:
        return identity_perm(len(S.roots))
    n = len(S.roots)
    vals = [S.numeric(r, embedding, 120) for r in S.roots]
    targets = [S.root_boxes.approx(i, 120) for i in range(n)]
    pi = []
    for v in vals:
        pi.append(min(range(n), key=lambda i: abs(v - targets[i])))
    if len(set(pi)) != n:
        raise CertificationError("ambiguous labeling under a non-canonical embedding")
    return tuple(pi)


def complex_conjugation(S: SplittingField, embedding: int = 0) -> tuple:
    """Complex conjugation as a root permutation, for the chosen embedding of N into C."""
    c = S.conjugation_pairing
    pi = _embedding_labeling(S, embedding)
    tau = compose(inverse(pi), compose(tuple(c), pi))
    if tau not in _full_group(S):
        raise CertificationError("conjugation is not an automorphism")
    return tau


# ---------------------------------------------------------------- fixed fields


def fixed_field(S: SplittingField, H: PermutationGroup):
    """(F, F -> N) for the subfield of N fixed by the subgroup ``H``."""
    G = _full_group(S)
    N = S.field
    target = G.order // H.order
    if target == 1:
        return rational_field(), rational_embedding(N)
    if H.order == 1:
        return N, SubfieldEmbedding(N, N, N.gen(), check=False)
    conj = [S.generator_image(h) for h in H.elements]
    theta = None
    s = N.zero()
    for x in conj:
        s = s + x
    if s.minimal_polynomial().degree == target:
        theta = s
    j = 0
    while theta is None:
        prod = N.one()
        for x in conj:
            prod = prod * (x + j)
        if prod.minimal_polynomial().degree == target:
            theta = prod
        j += 1
    mp = theta.minimal_polynomial()
    F = NumberField(mp, check=False, provenance=("fixed", H.order))
    return F, SubfieldEmbedding(F, N, theta, check=False)


def fixing_group(S: SplittingField, emb: SubfieldEmbedding) -> PermutationGroup:
    """Elements of Gal(N/Q) fixing the image of ``emb`` (Galois correspondence)."""
    return automorphism_group(S, emb)


def subgroups_between(H: PermutationGroup, G: PermutationGroup):
    """All subgroups S with H <= S <= G, ordered by (order, elements)."""
    if not H.is_subgroup_of(G):
        raise ValueError("H is not a subgroup of G")
    start = H.element_set
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for S in frontier:
            for g in G.elements:
                if g in S:
                    continue
                T = _closure(chain(_gens_of(S, G.degree), [g]), G.degree)
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    groups = [PermutationGroup.from_elements(G.degree, s) for s in seen]
    groups.sort(key=lambda P: (P.order, P.elements))
    return groups


def _gens_of(elements, degree):
    return PermutationGroup.from_elements(degree, elements).generators
