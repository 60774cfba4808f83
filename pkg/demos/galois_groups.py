"""
Splitting fields and Galois groups
==================================

The splitting field is built by adjoining roots one at a time; automorphisms
are permutations of the roots, found by matching images of the tower's
generators.
"""

# %%

from hyperdense import (
    Poly,
    automorphism_group,
    complex_conjugation,
    cyclotomic,
    fixed_field,
    splitting_field,
    subgroups_between,
)
from hyperdense.galois import PermutationGroup

x = Poly.x()

# %%

for p in (x**2 - 2, x**3 - 2, cyclotomic(5), x**4 - 2, x**4 - x - 1):
    S = splitting_field(p)
    G = automorphism_group(S)
    print(f"{str(p):28s} [N:Q] = {S.degree:2d}  |G| = {G.order:2d}  abelian={G.is_abelian()} cyclic={G.is_cyclic()}")

# %%
# Complex conjugation as a permutation of the roots of x^4 - 2, and the
# subfields of the splitting field through the Galois correspondence.

S = splitting_field(x**4 - 2)
G = automorphism_group(S)
tau = complex_conjugation(S)
print("tau =", tau)
trivial = PermutationGroup.generated(G.degree, [])
for H in subgroups_between(trivial, G):
    F, _ = fixed_field(S, H)
    print(f"|H| = {H.order}: fixed field degree {F.degree}, {F.poly}")
