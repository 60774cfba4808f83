"""Decision procedures for Zariski density of S-integral points on P^n minus Z.

For S the archimedean places the answer is a three-way test: the points are
not dense exactly when the forms are linearly dependent (A), the unit group
of k is finite and Z has several components over k (B), or some definition
field M_i contains a CM subfield over k (C).  For larger S the same (A) and
(B) checks apply, and a CM component is settled by how the primes of S split
in the maximal CM subfield L and its real subfield L', or by the exponent
identity obtained from user-supplied S-unit valuations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd

from . import _zpoly as zp
from .arrangement import Arrangement, components_over_k, linear_rank
from .cmfields import CmReport, maximal_cm_subfield_via_group
from .embeddings import embeddings_of, signature, unit_rank
from .errors import DimensionError
from .factor import factor_mod_p
from .fieldpoly import roots_in_field
from .galois import DEFAULT_DEGREE_CAP
from .linalg import nullspace, primitive_integer_vector
from .numberfield import NumberField, SubfieldEmbedding
from .polynomial import Poly

__all__ = [
    "Verdict",
    "PlaceSpec",
    "UnitActionData",
    "SplittingRecord",
    "IdentitySolution",
    "decide_s_infinity",
    "decide_general_s",
    "prime_splitting",
    "solve_identity_linear_algebra",
    "is_galois_over",
]

STATUSES = ("dense", "not_dense", "unknown")
CONDITIONS = (
    "A",
    "B",
    "C",
    "none",
    "s4_split_complete",
    "s4_no_split",
    "s4_linear_algebra",
    "insufficient_data",
)


@dataclass(frozen=True)
class Verdict:
    """Decision with the headline condition, every triggered condition, and evidence."""

    status: str
    condition: str
    conditions_triggered: tuple = ()
    witness: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status}")
        if self.condition not in CONDITIONS:
            raise ValueError(f"unknown condition {self.condition}")

    def to_json(self):
        return {
            "status": self.status,
            "condition": self.condition,
            "conditions_triggered": list(self.conditions_triggered),
            "witness": self.witness,
        }


@dataclass(frozen=True)
class PlaceSpec:
    """Finite places of k as rational primes, with a selector among primes of k above each.

    The archimedean places are always included.
    """

    primes: tuple = ()
    selectors: tuple = ()

    def __post_init__(self):
        for p in self.primes:
            if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
                raise ValueError(f"{p} is not a prime")
        if self.selectors and len(self.selectors) != len(self.primes):
            raise DimensionError("one selector per prime is required")

    @property
    def num_finite(self) -> int:
        return len(self.primes)

    def to_json(self):
        out = {"primes": list(self.primes)}
        if self.selectors:
            out["selectors"] = list(self.selectors)
        return out


@dataclass(frozen=True)
class UnitActionData:
    """Valuations of S-unit generators of L modulo units.

    ``valuations[g][e][v]`` is the valuation at place ``v`` of S_L of the image
    of generator ``g`` under embedding ``e`` (embeddings of L over k, all of
    them, so their number is 2l).  ``conjugation`` pairs embeddings under
    complex conjugation; ``sigma`` picks one embedding per pair.
    """

    valuations: tuple
    conjugation: tuple | None = None
    sigma: tuple | None = None
    num_embeddings: int | None = None

    def dimensions(self):
        gens = len(self.valuations)
        if gens == 0:
            return 0, self.num_embeddings, 0
        ne = {len(v) for v in self.valuations}
        if len(ne) != 1:
            raise DimensionError("generators disagree on the number of embeddings")
        (emb,) = ne
        places = {len(row) for v in self.valuations for row in v}
        if len(places) != 1:
            raise DimensionError("embeddings disagree on the number of places")
        (pl,) = places
        if self.num_embeddings is not None and self.num_embeddings != emb:
            raise DimensionError("valuation data does not match the number of embeddings")
        return gens, emb, pl


# ---------------------------------------------------------------- splitting of primes


@dataclass(frozen=True)
class SplittingRecord:
    """Factorization pattern of p in K as sorted (e, f) pairs.

    ``verified`` is false when no tried generator is p-maximal, in which
    case the pattern is that of the defining polynomial mod p and unproven.
    """

    prime: int
    degree: int
    pattern: tuple
    verified: bool
    generator_poly: Poly

    @property
    def num_primes(self) -> int:
        return len(self.pattern)

    @property
    def splits_completely(self) -> bool:
        return self.verified and self.num_primes == self.degree

    def to_json(self):
        return {
            "prime": self.prime,
            "primes": [{"e": e, "f": f} for e, f in self.pattern],
            "verified": self.verified,
            "generator_poly": self.generator_poly.to_json(),
        }


def _integral_generator_poly(f: Poly):
    """(q, d): q integral monic with root d * theta."""
    m = f.monic()
    d = 1
    for c in m.coeffs:
        d = d * c.denominator // gcd(d, c.denominator)
    n = m.degree
    q = [int(c * d ** (n - i)) for i, c in enumerate(m.coeffs)]
    return q, d


def _dedekind_ok(f, p):
    """Dedekind's criterion: Z[theta] is p-maximal for the monic integer polynomial f."""
    facs = factor_mod_p(f, p)
    g = [1]
    h = [1]
    t = [1]
    for u, e in facs:
        g = zp.zmul(g, u)
        for _ in range(e):
            t = zp.zmul(t, u)
        for _ in range(e - 1):
            h = zp.zmul(h, u)
    diff = zp.zsub(f, t)
    if any(c % p for c in diff):
        raise ArithmeticError("lifted factorization does not reduce to f")
    F = zp.mtrim([c // p for c in diff], p)
    gb = zp.mtrim(g, p)
    hb = zp.mtrim(h, p)
    d = zp.mgcd(gb, hb, p)
    d = zp.mgcd(d, F, p) if F else d
    return len(d) == 1, facs


def _pattern(facs):
    return tuple(sorted((e, len(u) - 1) for u, e in facs))


def prime_splitting(p: int, K: NumberField, max_alternatives: int = 256) -> SplittingRecord:
    """Residue degrees and ramification indices of p in K.

    The defining polynomial is used when Dedekind's criterion shows Z[theta]
    is p-maximal.  Otherwise elements (sum of a subset of powers)/p that are
    integral and generate K are tried; the record is flagged unverified if
    none passes.
    """
    n = K.degree
    if n == 1:
        return SplittingRecord(p, 1, ((1, 1),), True, K.poly)
    q, d = _integral_generator_poly(K.poly)
    ok, facs = _dedekind_ok(q, p)
    if ok:
        return SplittingRecord(p, n, _pattern(facs), True, Poly(q))
    theta = K.gen() * d
    powers = [K.one()]
    for _ in range(1, n):
        powers.append(powers[-1] * theta)
    tried = 0
    subsets = sorted(
        (eps for eps in product((0, 1), repeat=n) if any(eps[1:])),
        key=lambda eps: (sum(eps), eps),
    )
    for eps in subsets:
        if tried >= max_alternatives:
            break
        tried += 1
        alpha = K.zero()
        for e, pw in zip(eps, powers):
            if e:
                alpha = alpha + pw
        alpha = alpha * Fraction(1, p)
        cp = alpha.charpoly()
        if not cp.is_integral():
            continue
        if cp != alpha.minimal_polynomial():
            continue
        ints = [int(c) for c in cp.coeffs]
        ok2, facs2 = _dedekind_ok(ints, p)
        if ok2:
            return SplittingRecord(p, n, _pattern(facs2), True, cp)
    return SplittingRecord(p, n, _pattern(facs), False, Poly(q))


# ---------------------------------------------------------------- linear algebra


@dataclass(frozen=True)
class IdentitySolution:
    """Exponents with prod sigma_i(x)^a_i = prod (tau sigma_i)(x)^a_i, in two presentations."""

    vector: tuple
    left: tuple
    right: tuple

    def to_json(self):
        return {"vector": list(self.vector), "left": list(self.left), "right": list(self.right)}


def solve_identity_linear_algebra(L: NumberField | None, data: UnitActionData) -> IdentitySolution | None:
    """A primitive nonzero integer exponent vector solving the identity, or ``None``.

    Rows are indexed by (generator, place), columns by the chosen embeddings
    sigma_i; the entry is v(sigma_i g) - v(tau sigma_i g).
    """
    num_emb = data.num_embeddings
    if num_emb is None and L is not None:
        num_emb = L.degree
    data = UnitActionData(data.valuations, data.conjugation, data.sigma, num_emb)
    gens, emb, places = data.dimensions()
    if emb is None:
        raise DimensionError("number of embeddings unknown")
    conj = data.conjugation
    if conj is None:
        if L is None:
            raise DimensionError("conjugation pairing required without a field")
        conj = embeddings_of(L).conjugation
    conj = tuple(conj)
    if len(conj) != emb or sorted(conj) != list(range(emb)):
        raise DimensionError("conjugation pairing is not a permutation of the embeddings")
    if any(conj[conj[i]] != i or conj[i] == i for i in range(emb)):
        raise DimensionError("conjugation must pair every embedding with a different one")
    sigma = data.sigma
    if sigma is None:
        sigma = tuple(i for i in range(emb) if i < conj[i])
    sigma = tuple(sigma)
    if len(sigma) * 2 != emb or len({frozenset((s, conj[s])) for s in sigma}) != len(sigma):
        raise DimensionError("sigma must pick one embedding from each conjugate pair")
    rows = []
    for g in range(gens):
        for v in range(places):
            rows.append(
                [Fraction(data.valuations[g][s][v] - data.valuations[g][conj[s]][v]) for s in sigma]
            )
    basis = nullspace(rows, ncols=len(sigma))
    if not basis:
        return None
    vec = tuple(primitive_integer_vector(basis[0]))
    left = tuple(max(a, 0) for a in vec)
    right = tuple(max(-a, 0) for a in vec)
    return IdentitySolution(vec, left, right)


def is_galois_over(L: NumberField, k_in_L: SubfieldEmbedding | None) -> bool:
    """Whether L/k is normal: it has [L:k] automorphisms fixing k."""
    roots = roots_in_field(L, L.poly) if L.degree > 1 else [L.zero()]
    if k_in_L is None or k_in_L.source.degree == 1:
        return len(roots) == L.degree
    x = k_in_L.image
    count = 0
    for r in roots:
        if x.as_poly()(r) == x:
            count += 1
    return count * k_in_L.source.degree == L.degree


# ---------------------------------------------------------------- decisions


def _dependence_relation(A: Arrangement):
    W = A.W
    n1 = A.ambient_dim + 1
    cols = [list(h.coefficients) for h in A.hyperplanes]
    mat = [[cols[j][i] for j in range(A.m)] for i in range(n1)]
    basis = nullspace(mat, ncols=A.m, zero=W.zero(), one=W.one())
    return basis[0] if basis else None


def _evaluate(k, A, num_finite, cm_embedding=0, max_degree=DEFAULT_DEGREE_CAP):
    """Evaluate all three conditions; returns (flags, witness, components, reports)."""
    rank = linear_rank(A)
    comps = components_over_k(A)
    cond_a = rank < A.m
    ur = unit_rank(k, num_finite)
    cond_b = ur == 0 and len(comps) > 1
    reports = [
        maximal_cm_subfield_via_group(c.k_in_field, embedding=cm_embedding, max_degree=max_degree)
        for c in comps
    ]
    cond_c = any(r.contains for r in reports)
    witness = {
        "m": A.m,
        "rank": rank,
        "unit_rank": ur,
        "num_components": len(comps),
        "components": [dict(c.to_json(), cm=r.to_json()) for c, r in zip(comps, reports)],
    }
    if cond_a:
        rel = _dependence_relation(A)
        witness["dependence"] = [c.to_json() for c in rel]
    flags = {"A": cond_a, "B": cond_b, "C": cond_c}
    return flags, witness, comps, reports


def decide_s_infinity(
    k: NumberField, A: Arrangement, cm_embedding: int = 0, max_degree: int = DEFAULT_DEGREE_CAP
) -> Verdict:
    """Density of integral points on P^n minus the arrangement, S archimedean."""
    if A.base_field != k:
        raise ValueError("arrangement is over a different base field")
    flags, witness, _, _ = _evaluate(k, A, 0, cm_embedding, max_degree)
    triggered = tuple(c for c in ("A", "B", "C") if flags[c])
    if triggered:
        return Verdict("not_dense", triggered[0], triggered, witness)
    return Verdict("dense", "none", (), witness)


def _k_in_L(report: CmReport, k_in_M: SubfieldEmbedding):
    if k_in_M.source.degree == 1:
        return None
    pre = report.cm_embedding.preimage(k_in_M.image)
    return SubfieldEmbedding(k_in_M.source, report.cm_field, pre, check=False)


def _check_selectors(k: NumberField, S: PlaceSpec):
    for i, p in enumerate(S.primes):
        sel = S.selectors[i] if S.selectors else 0
        if k.degree == 1:
            if sel != 0:
                raise ValueError("selector must be 0 over Q")
            continue
        rec = prime_splitting(p, k)
        if not 0 <= sel < rec.num_primes:
            raise ValueError(f"selector {sel} out of range for {rec.num_primes} primes of k above {p}")


def decide_general_s(
    k: NumberField,
    A: Arrangement,
    S: PlaceSpec,
    data: UnitActionData | None = None,
    cm_embedding: int = 0,
    max_degree: int = DEFAULT_DEGREE_CAP,
) -> Verdict:
    """Partial decision for S containing finite places.

    Each CM component is settled by complete splitting in L (dense), by no
    place of S_{L'} splitting in L (not dense), or by the exponent identity
    from ``data`` when L/k is Galois; otherwise the verdict is unknown.
    Splitting is tested absolutely over Q, which is conservative when k != Q.
    """
    if S.num_finite == 0:
        return decide_s_infinity(k, A, cm_embedding, max_degree)
    if A.base_field != k:
        raise ValueError("arrangement is over a different base field")
    _check_selectors(k, S)
    flags, witness, comps, reports = _evaluate(k, A, S.num_finite, cm_embedding, max_degree)
    witness["S"] = S.to_json()
    triggered = tuple(c for c in ("A", "B", "C") if flags[c])
    if flags["A"]:
        return Verdict("not_dense", "A", triggered, witness)
    if flags["B"]:
        return Verdict("not_dense", "B", triggered, witness)
    if not flags["C"]:
        return Verdict("dense", "none", triggered, witness)

    outcomes = []
    data_used = False
    for idx, (c, rep) in enumerate(zip(comps, reports)):
        if not rep.contains:
            continue
        L, Lp = rep.cm_field, rep.real_subfield
        records = []
        split_complete = False
        no_split = True
        for p in S.primes:
            rl = prime_splitting(p, L)
            rlp = prime_splitting(p, Lp)
            records.append({"prime": p, "L": rl.to_json(), "L_real": rlp.to_json()})
            if rl.splits_completely:
                split_complete = True
            if not (rl.verified and rlp.verified and rl.num_primes == rlp.num_primes):
                no_split = False
        entry = {"component": idx, "splitting": records}
        if split_complete:
            entry["result"] = "dense"
            entry["test"] = "s4_split_complete"
        elif no_split:
            entry["result"] = "not_dense"
            entry["test"] = "s4_no_split"
        else:
            k_in_L = _k_in_L(rep, c.k_in_field)
            galois = is_galois_over(L, k_in_L)
            entry["galois"] = galois
            if data is not None and galois and not data_used:
                data_used = True
                sol = solve_identity_linear_algebra(L, data)
                entry["test"] = "s4_linear_algebra"
                if sol is None:
                    entry["result"] = "dense"
                    entry["conditional_on_complete_generators"] = True
                else:
                    entry["result"] = "not_dense"
                    entry["identity"] = sol.to_json()
            else:
                entry["result"] = "unknown"
                entry["test"] = "insufficient_data"
        outcomes.append(entry)
    witness["general_s"] = outcomes
    bad = [o for o in outcomes if o["result"] == "not_dense"]
    if bad:
        return Verdict("not_dense", bad[0]["test"], triggered, witness)
    if any(o["result"] == "unknown" for o in outcomes):
        return Verdict("unknown", "insufficient_data", triggered, witness)
    return Verdict("dense", outcomes[0]["test"], triggered, witness)
