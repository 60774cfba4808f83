"""Point sets from units, exact identity checks, CM vanishing forms and density probes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial, gcd, lcm

from .cmfields import CmReport, maximal_cm_subfield_via_group
from .errors import DimensionError, HyperdenseError, NotAUnitError, NotCMError
from .factor import factor_mod_p, small_primes
from .fieldpoly import roots_in_field
from .linalg import bareiss_rank, nullspace, primitive_integer_vector, rank, solve
from .mpoly import MPoly, monomials
from .numberfield import FieldElement, NumberField, SubfieldEmbedding, rational_embedding, rational_field
from .polynomial import cyclotomic, discriminant, euler_phi, rational_to_str

__all__ = [
    "UnitSupply",
    "ProjectivePointSet",
    "DensityReport",
    "torsion_units",
    "make_unit_supply",
    "unit_points",
    "product_points",
    "empirical_density",
    "verify_multiplicative_identity",
    "embeddings_over",
    "cm_vanishing_forms",
    "integrality_denominators",
    "verify_integrality",
]


# ---------------------------------------------------------------- torsion


def _root_key(e: FieldElement):
    c = e.coords
    nz = [i for i, v in enumerate(c) if v]
    top = nz[-1]
    return (len(nz), top, -c[top], c)


def _split_prime_bound(M: NumberField, wanted=5, limit=20000):
    """gcd of p - 1 over primes p splitting completely in M; a multiple of w."""
    _, f = M.poly.integer_primitive()
    disc = discriminant(M.poly)
    B = 0
    found = 0
    for p in small_primes(2):
        if p > limit:
            break
        if f[-1] % p == 0 or (disc.numerator % p == 0):
            continue
        facs = factor_mod_p(f, p)
        if all(len(u) == 2 and e == 1 for u, e in facs):
            B = gcd(B, p - 1)
            found += 1
            if found >= wanted or B <= 2:
                break
    return B or None


def torsion_units(M: NumberField):
    """(w, zeta): the number of roots of unity in M and a generator of them."""
    n = M.degree
    if n == 1:
        return 2, M.rational(-1)
    cache_key = ("torsion",)
    if cache_key in M.cache:
        return M.cache[cache_key]
    bound = _split_prime_bound(M)
    # phi(m) <= n forces m <= 2 n^2 comfortably
    cands = [m for m in range(2, 2 * n * n + 7, 2) if n % euler_phi(m) == 0]
    if bound is not None:
        cands = [m for m in cands if bound % m == 0]
    result = (2, M.rational(-1))
    for m in sorted(cands, reverse=True):
        if m == 2:
            break
        roots = roots_in_field(M, cyclotomic(m))
        if roots:
            result = (m, min(roots, key=_root_key))
            break
    M.cache[cache_key] = result
    return result


# ---------------------------------------------------------------- units


def _s_integral(poly, primes) -> bool:
    for c in poly.coeffs:
        d = c.denominator
        for p in primes:
            while d % p == 0:
                d //= p
        if d != 1:
            return False
    return True


def _check_unit(x: FieldElement, primes=()):
    if x.is_zero():
        raise NotAUnitError("zero is not a unit")
    if not (_s_integral(x.charpoly(), primes) and _s_integral(x.inverse().charpoly(), primes)):
        what = "S-unit" if primes else "unit"
        raise NotAUnitError(f"{x} is not a {what}")


@dataclass(frozen=True)
class UnitSupply:
    """User-supplied units (or S-units) of M together with its torsion."""

    field: NumberField
    generators: tuple
    w: int
    torsion_generator: FieldElement
    primes: tuple = ()


def make_unit_supply(M: NumberField, generators, primes=()) -> UnitSupply:
    """Verify each generator exactly (x and 1/x S-integral) and attach torsion."""
    gens = tuple(generators)
    for g in gens:
        if g.field != M:
            raise ValueError("generator not in M")
        _check_unit(g, tuple(primes))
    w, zeta = torsion_units(M)
    return UnitSupply(M, gens, w, zeta, tuple(primes))


# ---------------------------------------------------------------- points


@dataclass(frozen=True)
class ProjectivePointSet:
    """Distinct points of P^n(k), first nonzero coordinate 1."""

    ambient_dim: int
    points: tuple
    base_field: NumberField | None = None

    def __len__(self):
        return len(self.points)

    def to_json(self):
        return {"ambient_dim": self.ambient_dim, "points": [_point_json(p) for p in self.points]}

    def json_lines(self):
        import json

        yield json.dumps({"ambient_dim": self.ambient_dim, "count": len(self.points)})
        for p in self.points:
            yield json.dumps(_point_json(p))


def _coord_json(c):
    return rational_to_str(c) if isinstance(c, (int, Fraction)) else c.to_json()


def _point_json(p):
    return [_coord_json(c) for c in p]


class _Coordinates:
    """Coordinates over k of elements of M in a given k-basis."""

    def __init__(self, M: NumberField, basis, k_in_M: SubfieldEmbedding):
        self.M = M
        self.k_in_M = k_in_M
        self.k = k_in_M.source
        dk = self.k.degree
        basis = list(basis)
        if len(basis) * dk != M.degree:
            raise DimensionError(f"basis has {len(basis)} elements, expected {M.degree // dk}")
        kpow = [M.one()]
        for _ in range(1, dk):
            kpow.append(kpow[-1] * k_in_M.image)
        self.cols = [kp * b for b in basis for kp in kpow]
        self.mat = [[c.coords[i] for c in self.cols] for i in range(M.degree)]
        if rank(self.mat) < M.degree:
            raise DimensionError("basis elements are not independent over k")
        self.n = len(basis)
        self.dk = dk

    def __call__(self, e: FieldElement):
        y = solve(self.mat, list(e.coords))
        if self.dk == 1:
            return tuple(y)
        return tuple(self.k.element(y[j * self.dk : (j + 1) * self.dk]) for j in range(self.n))


def _normalize_point(x):
    lead = next((c for c in x if c), None)
    if lead is None:
        raise ValueError("zero vector is not a projective point")
    return tuple(c / lead for c in x)


def _unit_values(supply: UnitSupply, exponent_bound: int):
    """t * prod g_i^e_i in lexicographic order of (torsion power, e_1, ..., e_g)."""
    if exponent_bound < 0:
        raise ValueError("exponent bound must be nonnegative")
    M = supply.field
    tors = [M.one()]
    for _ in range(1, supply.w):
        tors.append(tors[-1] * supply.torsion_generator)
    gen_pows = []
    for g in supply.generators:
        ginv = g.inverse()
        pw = {0: M.one()}
        for e in range(1, exponent_bound + 1):
            pw[e] = pw[e - 1] * g
            pw[-e] = pw[-e + 1] * ginv
        gen_pows.append(pw)
    rng = range(-exponent_bound, exponent_bound + 1)
    for t in tors:
        for exps in product(rng, repeat=len(supply.generators)):
            u = t
            for pw, e in zip(gen_pows, exps):
                if e:
                    u = u * pw[e]
            yield u


def unit_points(
    supply: UnitSupply, basis, exponent_bound: int, k_in_M: SubfieldEmbedding | None = None
) -> ProjectivePointSet:
    """Projective points of all t * prod g_i^e_i, |e_i| <= bound, t torsion, in the given basis.

    Enumeration is lexicographic over (torsion power, e_1, ..., e_g); the
    first occurrence of each projective point is kept.
    """
    M = supply.field
    k_in_M = k_in_M or rational_embedding(M)
    coords = _Coordinates(M, basis, k_in_M)
    seen = set()
    pts = []
    for u in _unit_values(supply, exponent_bound):
        p = _normalize_point(coords(u))
        if p not in seen:
            seen.add(p)
            pts.append(p)
    return ProjectivePointSet(coords.n - 1, tuple(pts), k_in_M.source)


def product_points(blocks, exponent_bound: int, extra: int = 0, box: int = 1) -> ProjectivePointSet:
    """Points of the multi-component set: one unit per block, then free integer coordinates.

    ``blocks`` holds ``(supply, basis, k_in_M)`` triples, one per component,
    whose coordinates fill consecutive slots; ``extra`` trailing coordinates
    run over the rational integers in ``[-box, box]``, a finite stand-in for
    all of O_k.  All blocks must share the base field k.
    """
    if box < 0 or extra < 0:
        raise ValueError("box and extra must be nonnegative")
    if not blocks and not extra:
        raise ValueError("nothing to enumerate")
    per_block = []
    k = None
    for supply, basis, k_in_M in blocks:
        k_in_M = k_in_M or rational_embedding(supply.field)
        if k is None:
            k = k_in_M.source
        elif k_in_M.source != k:
            raise ValueError("blocks are over different base fields")
        coords = _Coordinates(supply.field, basis, k_in_M)
        vecs = []
        seen = set()
        for u in _unit_values(supply, exponent_bound):
            v = coords(u)
            if v not in seen:
                seen.add(v)
                vecs.append(v)
        per_block.append(vecs)
    k = k or rational_field()
    one = Fraction(1) if k.degree == 1 else k.one()
    per_block += [[one * c for c in range(-box, box + 1)] for _ in range(extra)]
    seen = set()
    pts = []
    for parts in product(*per_block):
        x = tuple(c for part in parts for c in (part if isinstance(part, tuple) else (part,)))
        if not any(x):
            continue
        p = _normalize_point(x)
        if p not in seen:
            seen.add(p)
            pts.append(p)
    return ProjectivePointSet(len(pts[0]) - 1, tuple(pts), k)


# ---------------------------------------------------------------- density probe


@dataclass(frozen=True)
class DegreeProbe:
    degree: int
    monomial_count: int
    rank: int
    insufficient_points: bool
    vanishing_forms: tuple = ()

    @property
    def full_rank(self) -> bool:
        return self.rank == self.monomial_count

    def to_json(self):
        return {
            "degree": self.degree,
            "monomials": self.monomial_count,
            "rank": self.rank,
            "full_rank": self.full_rank,
            "insufficient_points": self.insufficient_points,
            "vanishing_forms": [f.to_json() for f in self.vanishing_forms],
        }


@dataclass(frozen=True)
class DensityReport:
    """Veronese rank of a point set in each degree up to ``max_degree``."""

    num_points: int
    probes: tuple

    def vanishing_degrees(self, include_insufficient=False):
        return [
            p.degree
            for p in self.probes
            if not p.full_rank and (include_insufficient or not p.insufficient_points)
        ]

    def to_json(self):
        return {"num_points": self.num_points, "degrees": [p.to_json() for p in self.probes]}


def _eval_monomial(point, e):
    v = 1
    for x, k in zip(point, e):
        if k:
            v = v * x ** k
    return v


def empirical_density(pts: ProjectivePointSet, max_degree: int, forms: bool = True) -> DensityReport:
    """Exact rank of the monomial evaluation matrix for each degree 1..max_degree."""
    nvars = pts.ambient_dim + 1
    rational = all(isinstance(c, (int, Fraction)) for p in pts.points for c in p)
    probes = []
    for d in range(1, max_degree + 1):
        mons = monomials(nvars, d)
        mat = [[_eval_monomial(p, e) for e in mons] for p in pts.points]
        r = bareiss_rank(mat) if rational else rank(mat)
        vanishing = ()
        if forms and r < len(mons):
            if rational:
                basis = nullspace([[Fraction(v) for v in row] for row in mat], ncols=len(mons))
                vecs = [primitive_integer_vector(v) for v in basis]
                vanishing = tuple(
                    MPoly(nvars, {e: Fraction(c) for e, c in zip(mons, v) if c}) for v in vecs
                )
            else:
                K = pts.base_field
                basis = nullspace(mat, ncols=len(mons), zero=K.zero(), one=K.one())
                vanishing = tuple(MPoly(nvars, dict(zip(mons, v))) for v in basis)
        probes.append(DegreeProbe(d, len(mons), r, len(mons) > len(pts.points), vanishing))
    return DensityReport(len(pts.points), tuple(probes))


# ---------------------------------------------------------------- identities


def embeddings_over(S, M: NumberField, k_in_M: SubfieldEmbedding | None = None):
    """Embeddings M -> N fixing k, in the canonical order of the roots of M's polynomial."""
    N = S.field
    base = S.locate_root(M.poly, 0)
    k_img = None
    if k_in_M is not None and k_in_M.source.degree > 1:
        k_img = k_in_M.image.as_poly()(base)
    out = []
    for idx in range(M.degree):
        r = S.locate_root(M.poly, idx)
        emb = SubfieldEmbedding(M, N, r, check=False)
        if k_img is None or k_in_M.image.as_poly()(r) == k_img:
            out.append(emb)
    return out


def verify_multiplicative_identity(embeddings, x: FieldElement, a, b) -> bool:
    """Exact test of prod sigma_i(x)^a_i == prod sigma_i(x)^b_i."""
    a, b = list(a), list(b)
    if len(a) != len(embeddings) or len(b) != len(embeddings):
        raise DimensionError("one exponent per embedding is required")
    if any(v < 0 for v in a + b):
        raise ValueError("exponents must be nonnegative")
    if sum(a) != sum(b):
        raise ValueError("exponent sums must agree")
    if x.is_zero():
        raise ValueError("x must be nonzero")
    imgs = [s(x) for s in embeddings]
    N = embeddings[0].target
    lhs, rhs = N.one(), N.one()
    for y, ea, eb in zip(imgs, a, b):
        if ea:
            lhs = lhs * y ** ea
        if eb:
            rhs = rhs * y ** eb
    return lhs == rhs


# ---------------------------------------------------------------- CM forms


def _relative_norm_form(M: NumberField, basis, L_in_M: SubfieldEmbedding):
    """N_{M/L}(sum x_j alpha_j) as an MPoly with coefficients in L."""
    from .galois import splitting_field

    n = len(basis)
    if L_in_M.source.degree == M.degree:
        coeffs = [L_in_M.preimage(b) for b in basis]
        if any(c is None for c in coeffs):
            raise HyperdenseError("basis element outside L")
        return MPoly.linear_form(coeffs)
    S = splitting_field(M.poly)
    embs = embeddings_over(S, M, L_in_M)
    N = S.field
    prod_form = MPoly.constant(n, N.one())
    for s in embs:
        prod_form = prod_form * MPoly.linear_form([s(b) for b in basis])
    L_in_N = embs[0].compose(L_in_M)

    def pull(v):
        pre = L_in_N.preimage(v)
        if pre is None:
            raise HyperdenseError("relative norm coefficient outside L")
        return pre

    return prod_form.map_coeffs(pull)


def _multinomial_power(Y: MPoly, m: int, one):
    terms = list(Y.terms.items())
    T = len(terms)
    pows = []
    for _, c in terms:
        pw = [one]
        for _ in range(m):
            pw.append(pw[-1] * c)
        pows.append(pw)
    out = {}
    fact = [factorial(i) for i in range(m + 1)]

    def rec(i, left, ks):
        if i == T - 1:
            ks.append(left)
            coeff = fact[m]
            for k in ks:
                coeff //= fact[k]
            val = one * coeff
            for (e, _), pw, k in zip(terms, pows, ks):
                if k:
                    val = val * pw[k]
            mono = tuple(sum(k * e[j] for (e, _), k in zip(terms, ks)) for j in range(Y.nvars))
            out[mono] = out[mono] + val if mono in out else val
            ks.pop()
            return
        for k in range(left, -1, -1):
            ks.append(k)
            rec(i + 1, left - k, ks)
            ks.pop()

    rec(0, m, [])
    return MPoly(Y.nvars, out)


def cm_vanishing_forms(
    k_in_M: SubfieldEmbedding,
    basis_M=None,
    basis_L=None,
    report: CmReport | None = None,
):
    """Nonzero forms over k vanishing on every unit point of M in ``basis_M``.

    The relative norm to the maximal CM subfield L, raised to m = 2 w_L,
    takes unit values in L'; its coordinates along the imaginary part of a
    split basis of L (first half spanning L') therefore vanish.  Returns
    ``(m, forms)``.
    """
    M = k_in_M.target
    k = k_in_M.source
    rep = report or maximal_cm_subfield_via_group(k_in_M)
    if not rep.contains:
        raise NotCMError(f"{M.poly} contains no CM subfield over k")
    L, L_in_M = rep.cm_field, rep.cm_embedding
    Lp, Lp_in_L = rep.real_subfield, rep.real_embedding
    if basis_M is None:
        kpw = _powers(M.gen(), M.degree // k.degree)
        basis_M = kpw
    basis_M = list(basis_M)
    k_in_L = rational_embedding(L) if k.degree == 1 else SubfieldEmbedding(
        k, L, L_in_M.preimage(k_in_M.image), check=False
    )
    l = L.degree // (2 * k.degree)
    if basis_L is None:
        real = [Lp_in_L(e) for e in _powers(Lp.gen() if Lp.degree > 1 else Lp.one(), l)]
        basis_L = real + [L.gen() * e for e in real]
    basis_L = list(basis_L)
    if len(basis_L) != 2 * l:
        raise DimensionError("basis of L must have 2l elements")
    for b in basis_L[:l]:
        if Lp.degree > 1 and Lp_in_L.preimage(b) is None:
            raise ValueError("first half of the basis of L must lie in the real subfield")
        if Lp.degree == 1 and not b.is_rational() and k.degree == 1:
            raise ValueError("first half of the basis of L must lie in the real subfield")
    coords = _Coordinates(L, basis_L, k_in_L)
    w, _ = torsion_units(L)
    m = 2 * w
    Y = _relative_norm_form(M, basis_M, L_in_M)
    P = _multinomial_power(Y, m, L.one())
    n = len(basis_M)
    forms = []
    for i in range(l, 2 * l):
        terms = {}
        for e, c in P.terms.items():
            v = coords(c)[i]
            if v:
                terms[e] = v
        f = MPoly(n, terms)
        if f:
            forms.append(f)
    return m, forms


def _powers(x, n):
    pw = [x.field.one()]
    for _ in range(1, n):
        pw.append(pw[-1] * x)
    return pw


# ---------------------------------------------------------------- integrality


def _primitive_integer_point(p):
    fr = [Fraction(c) for c in p]
    den = 1
    for c in fr:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in fr]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [v // g for v in ints]


def integrality_denominators(A, pts: ProjectivePointSet):
    """Per point, |F(x)| for F the product of component norm forms, x a primitive integer vector.

    This is the exact common denominator of all degree-deg(F) monomials
    divided by F at that point.  Only k = Q is supported.
    """
    from .arrangement import component_norm_form, components_over_k

    if A.base_field.degree != 1:
        raise NotImplementedError("integrality check is implemented over Q")
    if pts.ambient_dim != A.ambient_dim:
        raise DimensionError("points and arrangement live in different spaces")
    forms = [_integer_form(component_norm_form(A, c)) for c in components_over_k(A)]
    out = []
    for p in pts.points:
        x = _primitive_integer_point(p)
        v = 1
        for F in forms:
            v *= F(x)
        if v == 0:
            raise HyperdenseError(f"point {list(p)} lies on the arrangement")
        out.append(abs(v))
    return out


def _integer_form(F: MPoly) -> MPoly:
    """F scaled to coprime integer coefficients."""
    den = 1
    for c in F.terms.values():
        den = lcm(den, c.denominator)
    ints = {e: int(c * den) for e, c in F.terms.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    return MPoly(F.nvars, {e: v // g for e, v in ints.items()})


def verify_integrality(A, pts: ProjectivePointSet, bound: int | None = None) -> bool:
    """Whether one denominator clears every point's regular-function values.

    With ``bound`` the lcm of denominators must not exceed it; otherwise the
    lcm must already be reached on the first half of the points, so that it
    has stopped growing along the family.
    """
    vals = integrality_denominators(A, pts)
    dens = list(vals)
    total = 1
    for d in dens:
        total = lcm(total, d)
    if bound is not None:
        return total <= bound
    half = (len(dens) + 1) // 2
    head = 1
    for d in dens[:half]:
        head = lcm(head, d)
    return total == head
