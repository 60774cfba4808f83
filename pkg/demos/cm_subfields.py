"""
CM fields and CM subfields over a base field
============================================

A CM field is a totally imaginary quadratic extension of a totally real
field.  Two routes find the largest CM subfield of M over k: a group
computation with complex conjugation in the Galois closure, and a brute
walk over all subfields.  They must agree.
"""

# %%

from hyperdense import (
    Poly,
    SubfieldEmbedding,
    contains_cm_subfield_over,
    cyclotomic,
    is_cm_field,
    is_totally_real,
    make_field,
    maximal_cm_subfield_via_group,
)
from hyperdense.numberfield import rational_embedding
from hyperdense.polynomial import euler_phi

x = Poly.x()

# %%
# Cyclotomic fields are CM; the real subfield has half the degree.

for n in (3, 4, 5, 7, 8, 9, 12):
    K = make_field(cyclotomic(n))
    real = is_cm_field(K)
    tr = is_totally_real(real.source)
    print(f"Q(zeta_{n}): degree {euler_phi(n)}, real subfield {real.source.poly}, totally real: {tr}")

# %%
# Real quadratic fields and Q(2^(1/3)) are not CM.

for p in (x**2 - 2, x**2 - 5, x**3 - 2):
    print(p, "CM" if is_cm_field(make_field(p)) else "not CM")

# %%
# Both routes over k = Q for a few fields M.

for p in (cyclotomic(5), x**4 + 2, x**4 - 2, x**4 - 2 * x**2 + 9):
    M = make_field(p)
    a = maximal_cm_subfield_via_group(rational_embedding(M))
    b = contains_cm_subfield_over(rational_embedding(M))
    agree = a.contains == b.contains and (not a.contains or a.cm_field.poly == b.cm_field.poly)
    L = a.cm_field.poly if a.contains else None
    print(f"M = {p}: contains={a.contains} L={L} agree={agree}")

# %%
# Over a base field that is not totally real nothing qualifies: Q(i) has no
# CM subfield over itself.

Qi = make_field(x**2 + 1)
over_itself = SubfieldEmbedding(Qi, Qi, Qi.gen())
print("Q(i) over Q(i):", maximal_cm_subfield_via_group(over_itself).contains)

# %%
# Q(zeta_8) over Q(sqrt 2): the whole field is CM with real subfield Q(sqrt 2).

Z8 = make_field(cyclotomic(8))
z = Z8.gen()
sqrt2 = z + z**7
R2 = make_field(x**2 - 2)
rep = maximal_cm_subfield_via_group(SubfieldEmbedding(R2, Z8, sqrt2))
print("L =", rep.cm_field.poly, " L' =", rep.real_subfield.poly)
