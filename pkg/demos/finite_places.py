"""
Adding finite places
====================

With primes in S the Gaussian norm form x0^2 + x1^2 changes behaviour with
the prime: a split prime supplies new S-units and the points become dense,
an inert or ramified prime does not.
"""

# %%

from hyperdense import (
    NormComponentSpec,
    PlaceSpec,
    Poly,
    UnitActionData,
    build_arrangement,
    cyclotomic,
    decide_general_s,
    make_field,
    prime_splitting,
    rational_field,
    solve_identity_linear_algebra,
)

x = Poly.x()
Q = rational_field()
Qi = make_field(x**2 + 1)
gauss = build_arrangement(Q, 1, [NormComponentSpec(Qi, (Qi.one(), Qi.gen()))])

# %%
# How 2, 3 and 5 factor in Q(i), as sorted (e, f) pairs.

for p in (2, 3, 5):
    rec = prime_splitting(p, Qi)
    print(p, rec.pattern, "splits completely" if rec.splits_completely else "")

# %%
# The decisions follow the splitting.

for p in (5, 3, 2):
    v = decide_general_s(Q, gauss, PlaceSpec((p,)))
    print(f"S = {{inf, {p}}}: {v.status} ({v.condition})")

# %%
# The same outcomes from valuation data alone.  Embeddings of Q(i) are the
# identity and conjugation.  Over 5 the generator 2 + i has valuations
# (1, 0) at the two primes above 5 and its conjugate (0, 1): no identity,
# dense.  Over 3 or 2 the single generator (3, or 1 + i) has the same
# valuation in both embeddings: the identity exists, not dense.

split = UnitActionData((((1, 0), (0, 1)),))
inert = UnitActionData((((1,), (1,)),))
print("5:", solve_identity_linear_algebra(Qi, split))
print("3:", solve_identity_linear_algebra(Qi, inert).vector)
print("2:", solve_identity_linear_algebra(Qi, inert).vector)

# %%
# Z[theta] may fail to be maximal at p.  For Q(zeta_5) at 5 Dedekind's
# test passes and 5 is totally ramified.

print(prime_splitting(5, make_field(cyclotomic(5))).pattern)
