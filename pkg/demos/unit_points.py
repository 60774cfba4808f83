"""
Unit points and Veronese rank probes
====================================

Units of M written in a Q-basis of M give points on P^n whose norm form
value is a unit, hence integral points on the complement of the norm
hypersurface.  When M has no CM subfield these points are dense: the rank
of the monomial evaluation matrix is full in every degree.  When M has one,
explicit forms of degree 2 w_L vanish on all of them.
"""

# %%

import time
from math import comb

from hyperdense import (
    NormComponentSpec,
    Poly,
    build_arrangement,
    cm_vanishing_forms,
    cyclotomic,
    empirical_density,
    make_field,
    make_unit_supply,
    rational_field,
    torsion_units,
    unit_points,
    verify_integrality,
)
from hyperdense.numberfield import rational_embedding

x = Poly.x()


def powers(K):
    out = [K.one()]
    for _ in range(1, K.degree):
        out.append(out[-1] * K.gen())
    return out


# %%
# Pell: the powers of 1 + sqrt 2 up to exponent 25 give 51 points of P^1.

R2 = make_field(x**2 - 2)
r = R2.gen()
pell = unit_points(make_unit_supply(R2, [1 + r]), powers(R2), 25)
start = time.perf_counter()
report = empirical_density(pell, 20)
print(len(pell), "points; full rank through degree 20:", all(p.full_rank for p in report.probes),
      f"({time.perf_counter() - start:.2f}s)")

# %%
# Each point has |x0^2 - 2 x1^2| dividing a fixed denominator.

A = build_arrangement(rational_field(), 1, [NormComponentSpec(R2, tuple(powers(R2)))])
print("integrality holds:", verify_integrality(A, pell))

# %%
# Q(2^(1/3)) has unit 1 + a + a^2 (since (a - 1)(1 + a + a^2) = 1).  Probe
# up to the largest degree with no more monomials than points.

C = make_field(x**3 - 2)
a = C.gen()
cube = unit_points(make_unit_supply(C, [1 + a + a * a]), powers(C), 30)
d = max(d for d in range(1, 40) if comb(2 + d, 2) <= len(cube))
rep = empirical_density(cube, d)
print(len(cube), "points in P^2; probed to degree", d, "full rank:", all(p.full_rank for p in rep.probes))

# %%
# Q(zeta_5): torsion has order 10, so m = 2 w_L = 20, and two forms of
# degree 20 vanish on every unit point.

Z5 = make_field(cyclotomic(5))
z = Z5.gen()
print("torsion order:", torsion_units(Z5)[0])
m, forms = cm_vanishing_forms(rational_embedding(Z5))
pts = unit_points(make_unit_supply(Z5, [1 + z]), powers(Z5), 5)
print(f"m = {m}, {len(forms)} forms with {[len(f.terms) for f in forms]} terms")
print("all vanish on", len(pts), "points:", all(not f(list(p)) for f in forms for p in pts.points))

# %%
# Gaussian integers: only four units, two projective points, and x0*x1 at
# degree 2 already vanishes.

Qi = make_field(x**2 + 1)
g = unit_points(make_unit_supply(Qi, []), powers(Qi), 5)
rep = empirical_density(g, 2)
print(g.points, [f.format() for f in rep.probes[1].vanishing_forms])
