"""CM fields and the maximal CM subfield of M over k.

Two independent routes decide whether M contains a CM subfield over k:

* the group route: with tau complex conjugation in the Galois closure, let
  N be generated by all ``tau phi^-1 tau phi`` and N' = <tau> N; then the
  fixed fields of NH and N'H (H = Gal(closure/M)) are the candidate CM field
  and its real subfield, and the answer is yes exactly when tau is not in NH;
* the enumeration route: walk every subfield of M, keep the CM ones whose
  real subfield contains k, and take the largest.
"""

from __future__ import annotations

from dataclasses import dataclass

from .embeddings import signature
from .errors import HyperdenseError
from .galois import (
    DEFAULT_DEGREE_CAP,
    PermutationGroup,
    automorphism_group,
    complex_conjugation,
    compose,
    fixed_field,
    inverse,
    splitting_field,
    subgroups_between,
)
from .numberfield import NumberField, SubfieldEmbedding, rational_embedding, rational_field

__all__ = [
    "CmReport",
    "is_cm_field",
    "contains_cm_subfield_over",
    "maximal_cm_subfield_via_group",
    "same_subfield",
]


@dataclass(frozen=True)
class CmReport:
    """Outcome of a CM-subfield search.

    When ``contains`` is true, ``cm_embedding`` maps L into M and
    ``real_embedding`` maps L' into L.
    """

    contains: bool
    method: str
    cm_field: NumberField | None = None
    cm_embedding: SubfieldEmbedding | None = None
    real_subfield: NumberField | None = None
    real_embedding: SubfieldEmbedding | None = None

    def to_json(self):
        out = {"contains": self.contains, "method": self.method}
        if self.contains:
            out["cm_field"] = self.cm_field.poly.to_json()
            out["real_subfield"] = self.real_subfield.poly.to_json()
            out["cm_field_in_M"] = self.cm_embedding.image.to_json()
        return out


class _Closure:
    """M inside its Galois closure over Q, with the subgroups H and G_k."""

    def __init__(self, k_in_M: SubfieldEmbedding, max_degree: int):
        self.k_in_M = k_in_M
        self.M = k_in_M.target
        self.S = splitting_field(self.M.poly, max_degree)
        N = self.S.field
        self.iota = SubfieldEmbedding(self.M, N, self.S.roots[0], check=False)
        self.G = automorphism_group(self.S)
        self.H = self.G.stabilizer(0)
        k_image = self.iota(k_in_M.image) if k_in_M.source.degree > 1 else None
        if k_image is None:
            self.Gk = self.G
        else:
            self.Gk = PermutationGroup(
                self.G.degree, tuple(g for g in self.G.elements if self.S.apply(g, k_image) == k_image)
            )

    def subfield_of_M(self, T: PermutationGroup):
        """(F, F -> M) for the fixed field of a subgroup T containing H."""
        F, emb = fixed_field(self.S, T)
        if F.degree == 1:
            return F, rational_embedding(self.M)
        pre = self.iota.preimage(emb.image)
        if pre is None:
            raise HyperdenseError("fixed field of a supergroup of H is not inside M")
        return F, SubfieldEmbedding(F, self.M, pre, check=False)

    def real_inside(self, L_T: PermutationGroup, Lp_T: PermutationGroup, L: NumberField, L_in_M):
        """(L', L' -> L) for nested subgroups L_T <= Lp_T."""
        Lp, emb_N = fixed_field(self.S, Lp_T)
        if Lp.degree == 1:
            return Lp, rational_embedding(L)
        L_in_N = SubfieldEmbedding(L, self.S.field, self.iota(L_in_M.image), check=False)
        pre = L_in_N.preimage(emb_N.image)
        if pre is None:
            raise HyperdenseError("real subfield is not inside the CM field")
        return Lp, SubfieldEmbedding(Lp, L, pre, check=False)


def _totally_real(F: NumberField) -> bool:
    return signature(F)[1] == 0


def _totally_imaginary(F: NumberField) -> bool:
    return signature(F)[0] == 0


def is_cm_field(K: NumberField, max_degree: int = DEFAULT_DEGREE_CAP) -> SubfieldEmbedding | None:
    """The embedding of the maximal real subfield into K when K is CM, else ``None``."""
    if K.degree < 2 or not _totally_imaginary(K):
        return None
    if K.degree == 2:
        return rational_embedding(K)
    C = _Closure(rational_embedding(K), max_degree)
    H = C.H
    seen = set()
    for g in C.G.elements:
        if g in H:
            continue
        T = PermutationGroup.generated(C.G.degree, H.generators + (g,))
        if T.order != 2 * H.order or T.element_set in seen:
            continue
        seen.add(T.element_set)
        F, emb = C.subfield_of_M(T)
        if _totally_real(F):
            return emb
    return None


def _report(C: _Closure, L_T, Lp_T, method) -> CmReport:
    L, L_in_M = C.subfield_of_M(L_T)
    Lp, Lp_in_L = C.real_inside(L_T, Lp_T, L, L_in_M)
    return CmReport(True, method, L, L_in_M, Lp, Lp_in_L)


def maximal_cm_subfield_via_group(
    k_in_M: SubfieldEmbedding, embedding: int = 0, max_degree: int = DEFAULT_DEGREE_CAP
) -> CmReport:
    """Decide and construct the maximal CM subfield from complex conjugation.

    ``embedding`` picks which root of the closure's defining polynomial is
    used to place the closure in C; the boolean outcome does not depend on it.
    """
    method = "group"
    if not _totally_real(k_in_M.source):
        return CmReport(False, method)
    C = _Closure(k_in_M, max_degree)
    G, H, S = C.G, C.H, C.S
    tau = complex_conjugation(S, embedding)
    comm = {compose(tau, compose(inverse(phi), compose(tau, phi))) for phi in G.elements}
    Ngrp = PermutationGroup.generated(G.degree, sorted(comm))
    NH = Ngrp.product(H)
    if tau in NH:
        return CmReport(False, method)
    NpH = NH.product(PermutationGroup.generated(G.degree, [tau]))
    return _report(C, NH, NpH, method)


def contains_cm_subfield_over(k_in_M: SubfieldEmbedding, max_degree: int = DEFAULT_DEGREE_CAP) -> CmReport:
    """Decide by enumerating every subfield of M (subgroups between H and G)."""
    method = "enumeration"
    C = _Closure(k_in_M, max_degree)
    subs = subgroups_between(C.H, C.G)
    real_cache = {}

    def is_real(T):
        if T.elements not in real_cache:
            real_cache[T.elements] = _totally_real(fixed_field(C.S, T)[0])
        return real_cache[T.elements]

    found = []
    for T in subs:
        F, _ = fixed_field(C.S, T)
        if F.degree < 2 or not _totally_imaginary(F):
            continue
        for U in subs:
            if U.order == 2 * T.order and T.is_subgroup_of(U) and U.is_subgroup_of(C.Gk) and is_real(U):
                found.append((T, U))
                break
    if not found:
        return CmReport(False, method)
    found.sort(key=lambda tu: (tu[0].order, tu[0].elements))
    T, U = found[0]
    if not all(T.is_subgroup_of(T2) for T2, _ in found):
        raise HyperdenseError("CM subfields over k have no common maximal element")
    return _report(C, T, U, method)


def same_subfield(a: SubfieldEmbedding, b: SubfieldEmbedding) -> bool:
    """Whether two embeddings into the same field have the same image."""
    if a.target != b.target:
        raise ValueError("embeddings must share a target")
    if a.source.degree != b.source.degree:
        return False
    if a.source.degree == 1:
        return True
    return a.preimage(b.image) is not None and b.preimage(a.image) is not None
