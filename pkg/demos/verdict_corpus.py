"""
Deciding density over the archimedean places
============================================

Seven small arrangements over Q, one per behaviour of the decision: a
linearly dependent arrangement, two components with finitely many units,
norm forms with and without a CM subfield, and plain affine space.
"""

# %%
# Setup: every field is given by a monic irreducible polynomial over Q.

import time

from hyperdense import (
    HyperplaneSpec,
    NormComponentSpec,
    Poly,
    build_arrangement,
    components_over_k,
    cyclotomic,
    decide_s_infinity,
    make_field,
    rational_field,
)

x = Poly.x()
Q = rational_field()
Qi = make_field(x**2 + 1)
R2 = make_field(x**2 - 2)
C = make_field(x**3 - 2)
Z5 = make_field(cyclotomic(5))


def powers(K):
    # 1, theta, theta^2, ... spans K over Q
    out = [K.one()]
    for _ in range(1, K.degree):
        out.append(out[-1] * K.gen())
    return tuple(out)


# %%
# Explicit hyperplanes take rational coefficients; a norm component expands
# to the whole conjugate orbit of sum_j basis[j] x_j.

corpus = {
    "x0, x1, x0+x1 in P^2": build_arrangement(
        Q, 2, [HyperplaneSpec(Q, (1, 0, 0)), HyperplaneSpec(Q, (0, 1, 0)), HyperplaneSpec(Q, (1, 1, 0))]
    ),
    "x0, x1 in P^2": build_arrangement(Q, 2, [HyperplaneSpec(Q, (1, 0, 0)), HyperplaneSpec(Q, (0, 1, 0))]),
    "x0^2 + x1^2": build_arrangement(Q, 1, [NormComponentSpec(Qi, powers(Qi))]),
    "x0^2 - 2 x1^2": build_arrangement(Q, 1, [NormComponentSpec(R2, powers(R2))]),
    "norm form of Q(2^(1/3))": build_arrangement(Q, 2, [NormComponentSpec(C, powers(C))]),
    "norm form of Q(zeta_5)": build_arrangement(Q, 3, [NormComponentSpec(Z5, powers(Z5))]),
    "x0 in P^3": build_arrangement(Q, 3, [HyperplaneSpec(Q, (1, 0, 0, 0))]),
}

# %%
# Each verdict records every triggered condition, not just the headline one.

start = time.perf_counter()
for name, A in corpus.items():
    v = decide_s_infinity(Q, A)
    print(f"{name:28s} {v.status:10s} condition={v.condition:5s} triggered={list(v.conditions_triggered)}")
print(f"total {time.perf_counter() - start:.2f}s")

# %%
# Components over Q and their definition fields.

for name, A in corpus.items():
    comps = components_over_k(A)
    desc = ", ".join(f"deg {c.degree} over {c.definition_field.poly}" for c in comps)
    print(f"{name:28s} {len(comps)} component(s): {desc}")

# %%
# The witness for the cyclotomic case names the CM field and its real subfield.

w = decide_s_infinity(Q, corpus["norm form of Q(zeta_5)"]).witness
print(w["components"][0]["cm"])
