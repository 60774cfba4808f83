"""Hyperplane arrangements with algebraic coefficients, decomposed over k.

All coefficient fields are placed inside one working field W, the splitting
field over Q of the product of their defining polynomials (and that of k).
Galois orbits under Gal(W/k) are the k-irreducible components.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DimensionError, HyperdenseError, NotDefinedOverK
from .galois import (
    DEFAULT_DEGREE_CAP,
    PermutationGroup,
    SplittingField,
    automorphism_group,
    splitting_field,
)
from .linalg import rank
from .mpoly import MPoly
from .numberfield import (
    FieldElement,
    NumberField,
    SubfieldEmbedding,
    identity_embedding,
    primitive_element,
    rational_embedding,
    rational_field,
    subfield_from_element,
)
from .fieldpoly import roots_in_field
from .polynomial import Poly

__all__ = [
    "Hyperplane",
    "HyperplaneSpec",
    "NormComponentSpec",
    "Component",
    "Arrangement",
    "build_arrangement",
    "normalize",
    "minimal_definition_field",
    "components_over_k",
    "linear_rank",
    "component_norm_form",
]


def normalize(coeffs):
    """Scale so that the first nonzero coefficient is 1."""
    coeffs = list(coeffs)
    lead = next((c for c in coeffs if c), None)
    if lead is None:
        raise ValueError("hyperplane with all coefficients zero")
    inv = 1 / lead
    return tuple(c * inv for c in coeffs)


@dataclass(frozen=True)
class Hyperplane:
    """A projective hyperplane sum_j a_j x_j = 0 with normalized coefficients in ``field``."""

    field: NumberField
    coefficients: tuple

    @classmethod
    def from_coefficients(cls, field, coeffs):
        return cls(field, normalize(coeffs))

    @property
    def key(self):
        return tuple(c.coords for c in self.coefficients)

    def to_json(self):
        return [c.to_json() for c in self.coefficients]


@dataclass(frozen=True)
class HyperplaneSpec:
    """One explicit hyperplane with coefficients in M; ``k_image`` places k in M."""

    field: NumberField
    coeffs: tuple
    k_image: FieldElement | None = None


@dataclass(frozen=True)
class NormComponentSpec:
    """Shorthand for the full conjugate orbit of sum_j basis[j] x_{offset+j}."""

    field: NumberField
    basis: tuple
    offset: int = 0
    k_image: FieldElement | None = None


@dataclass(frozen=True)
class Component:
    """A Gal(W/k)-orbit of hyperplanes.

    ``definition_field`` is M_i as an absolute field, with ``k_in_field``
    placing k inside it and ``field_in_W`` placing it inside W.
    """

    representative: Hyperplane
    orbit: tuple
    definition_field: NumberField
    k_in_field: SubfieldEmbedding
    field_in_W: SubfieldEmbedding
    degree: int

    def to_json(self):
        return {
            "orbit": list(self.orbit),
            "degree": self.degree,
            "definition_field": self.definition_field.poly.to_json(),
            "representative": self.representative.to_json(),
        }


@dataclass(eq=False)
class Arrangement:
    """Distinct hyperplanes in P^n, all expressed in the working field W."""

    base_field: NumberField
    ambient_dim: int
    hyperplanes: tuple
    working: SplittingField
    k_in_W: SubfieldEmbedding
    group_over_k: PermutationGroup
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def W(self) -> NumberField:
        return self.working.field

    @property
    def m(self) -> int:
        return len(self.hyperplanes)

    def apply(self, g, h: Hyperplane) -> Hyperplane:
        return Hyperplane(h.field, tuple(self.working.apply(g, c) for c in h.coefficients))


def _is_rational_field(K: NumberField) -> bool:
    return K.degree == 1


def _default_k_image(k: NumberField, M: NumberField):
    if _is_rational_field(k):
        return M.zero()
    roots = roots_in_field(M, k.poly)
    if not roots:
        raise NotDefinedOverK(f"base field {k.poly} does not embed in {M.poly}")
    return roots[0]


def _embed_into_W(S: SplittingField, k: NumberField, k_W, M: NumberField, k_image):
    """An embedding M -> W compatible with the given k -> M and k -> W."""
    if _is_rational_field(M):
        return rational_embedding(S.field)
    for idx in range(M.degree):
        beta = S.locate_root(M.poly, idx)
        emb = SubfieldEmbedding(M, S.field, beta, check=False)
        if k_W is None or emb(k_image) == k_W:
            return emb
    raise NotDefinedOverK(f"no embedding of {M.poly} into the working field extends the embedding of k")


def _to_w(emb: SubfieldEmbedding, M: NumberField, c):
    if _is_rational_field(M):
        c = c.rational_value() if isinstance(c, FieldElement) else c
        return emb.target.rational(c)
    return emb(c)


def build_arrangement(
    k: NumberField, ambient_dim: int, specs, max_degree: int = DEFAULT_DEGREE_CAP
) -> Arrangement:
    """Place every hyperplane in the working field and check Galois stability over k."""
    n1 = ambient_dim + 1
    polys = []
    if not _is_rational_field(k):
        polys.append(k.poly)
    for s in specs:
        if not _is_rational_field(s.field) and s.field.poly not in polys:
            polys.append(s.field.poly)
    prod = Poly.x()
    if polys:
        prod = polys[0]
        for p in polys[1:]:
            prod = prod * p
    S = splitting_field(prod, max_degree)
    W = S.field
    if _is_rational_field(k):
        k_W = None
        k_in_W = rational_embedding(W)
    else:
        k_W = S.locate_root(k.poly, 0)
        k_in_W = SubfieldEmbedding(k, W, k_W, check=False)
    Gk = automorphism_group(S, k_in_W if k_W is not None else None)

    hyperplanes = []

    def add(h):
        if any(h.coefficients == g.coefficients for g in hyperplanes):
            raise ValueError("duplicate hyperplane in arrangement")
        hyperplanes.append(h)

    for s in specs:
        M = s.field
        k_image = s.k_image if s.k_image is not None else _default_k_image(k, M)
        if not _is_rational_field(k) and not k.poly(k_image).is_zero():
            raise ValueError("k_embedding is not a root of the base field polynomial")
        emb = _embed_into_W(S, k, k_W, M, k_image)
        if isinstance(s, HyperplaneSpec):
            if len(s.coeffs) != n1:
                raise DimensionError(f"hyperplane has {len(s.coeffs)} coefficients, expected {n1}")
            add(Hyperplane.from_coefficients(W, [_to_w(emb, M, c) for c in s.coeffs]))
        else:
            if s.offset < 0 or s.offset + len(s.basis) > n1:
                raise DimensionError("norm component does not fit in the ambient space")
            coeffs = [W.zero()] * n1
            for j, b in enumerate(s.basis):
                coeffs[s.offset + j] = _to_w(emb, M, b)
            h = Hyperplane.from_coefficients(W, coeffs)
            orbit = []
            for g in Gk.elements:
                c = tuple(S.apply(g, x) for x in h.coefficients)
                if c not in orbit:
                    orbit.append(c)
            orbit.sort(key=lambda c: c != h.coefficients)
            for c in orbit:
                add(Hyperplane(W, c))

    A = Arrangement(k, ambient_dim, tuple(hyperplanes), S, k_in_W, Gk)
    _check_stable(A)
    return A


def _check_stable(A: Arrangement):
    present = {h.coefficients for h in A.hyperplanes}
    for h in A.hyperplanes:
        for g in A.group_over_k.generators:
            img = A.apply(g, h)
            if img.coefficients not in present:
                raise NotDefinedOverK(
                    "arrangement is not stable under Galois over k", missing=img.to_json()
                )


def minimal_definition_field(h: Hyperplane, k_in: SubfieldEmbedding):
    """(F, k -> F, F -> field of h): the field generated over k by the coefficients."""
    K = h.field
    if k_in.target != K:
        raise ValueError("k must embed into the coefficient field")
    gens = [k_in.image] if k_in.source.degree > 1 else []
    gens += [c for c in h.coefficients if not c.is_rational()]
    if not gens:
        F = rational_field()
        return F, rational_embedding(F), rational_embedding(K)
    gamma = gens[0]
    for e in gens[1:]:
        pe = primitive_element(K, gamma, e)
        gamma = pe.ambient.image if pe.field.degree > 1 else K.zero()
    F_in_K = subfield_from_element(gamma)
    F = F_in_K.source
    if k_in.source.degree == 1:
        k_in_F = rational_embedding(F)
    else:
        pre = F_in_K.preimage(k_in.image)
        k_in_F = SubfieldEmbedding(k_in.source, F, pre, check=False)
    return F, k_in_F, F_in_K


def components_over_k(A: Arrangement):
    """Galois orbits over k, ordered by (degree, representative coefficients)."""
    if "components" in A._cache:
        return A._cache["components"]
    index = {h.coefficients: i for i, h in enumerate(A.hyperplanes)}
    seen = set()
    comps = []
    for i, h in enumerate(A.hyperplanes):
        if i in seen:
            continue
        orbit = sorted({index[A.apply(g, h).coefficients] for g in A.group_over_k.elements})
        seen.update(orbit)
        F, k_in_F, F_in_W = minimal_definition_field(h, A.k_in_W)
        d = len(orbit)
        if F.degree != d * A.base_field.degree:
            raise HyperdenseError("orbit size disagrees with the degree of the definition field")
        comps.append(Component(h, tuple(orbit), F, k_in_F, F_in_W, d))
    comps.sort(key=lambda c: (c.degree, c.representative.key))
    A._cache["components"] = comps
    return comps


def linear_rank(A: Arrangement) -> int:
    """Rank over W of the m x (n+1) coefficient matrix."""
    return rank([list(h.coefficients) for h in A.hyperplanes])


def component_norm_form(A: Arrangement, c: Component) -> MPoly:
    """Product of the orbit's normalized linear forms, with coefficients pulled back to k.

    Coefficients are Fractions when k = Q and elements of k otherwise.
    """
    n1 = A.ambient_dim + 1
    W = A.W
    prod = MPoly.constant(n1, W.one())
    for i in c.orbit:
        h = A.hyperplanes[i]
        prod = prod * MPoly.linear_form(list(h.coefficients))
    for g in A.group_over_k.generators:
        for e, v in prod.terms.items():
            if A.working.apply(g, v) != v:
                raise HyperdenseError("norm form coefficient is not fixed by Gal(W/k)")
    k = A.base_field
    if _is_rational_field(k):
        return prod.map_coeffs(lambda v: v.rational_value())

    def pull(v):
        pre = A.k_in_W.preimage(v)
        if pre is None:
            raise HyperdenseError("norm form coefficient does not lie in k")
        return pre

    return prod.map_coeffs(pull)
