"""Shared helpers and independent oracles for the test suite."""

from itertools import combinations_with_replacement, permutations

import sympy


def power_basis(K):
    out = [K.one()]
    for _ in range(1, K.degree):
        out.append(out[-1] * K.gen())
    return tuple(out)


def _monomial_values(roots, max_degree):
    n = len(roots)
    one = roots[0].field.one()
    cols = []
    for d in range(max_degree + 1):
        for combo in combinations_with_replacement(range(n), d):
            v = one
            for i in combo:
                v = v * roots[i]
            cols.append(v)
    return cols


def _value_matrix(cols):
    deg = cols[0].field.degree
    return sympy.Matrix(
        [[sympy.Rational(c.coords[i].numerator, c.coords[i].denominator) for c in cols] for i in range(deg)]
    )


def relation_preserving_permutations(roots, max_degree=4):
    """Permutations pi with P(r_pi) = 0 for every rational P of degree <= max_degree vanishing at r.

    The relation space is the kernel of the monomial-value matrix A; pi
    preserves it exactly when stacking A_pi under A does not raise the rank.
    Linear algebra is done in sympy, independently of the package.
    """
    A = _value_matrix(_monomial_values(roots, max_degree))
    base = A.rank()
    out = []
    for pi in permutations(range(len(roots))):
        Api = _value_matrix(_monomial_values([roots[j] for j in pi], max_degree))
        if A.col_join(Api).rank() == base:
            out.append(tuple(pi))
    return out


# ---------------------------------------------------------------- verdict corpus


def _corpus():
    from fractions import Fraction

    from hyperdense import HyperplaneSpec, NormComponentSpec, Poly, cyclotomic, make_field, rational_field

    x = Poly.x()
    Q = rational_field()
    one, zero = Fraction(1), Fraction(0)

    def lines(*rows):
        return [HyperplaneSpec(Q, tuple(Fraction(v) for v in r)) for r in rows]

    def norm(p, n1):
        M = make_field(p)
        b = list(power_basis(M)) + [M.zero()] * (n1 - M.degree)
        return [NormComponentSpec(M, tuple(b), 0)]

    return [
        ("dependent_lines", 2, lines((1, 0, 0), (0, 1, 0), (1, 1, 0)), "not_dense", "A"),
        ("two_lines", 2, lines((1, 0, 0), (0, 1, 0)), "not_dense", "B"),
        ("gaussian", 1, norm(x**2 + 1, 2), "not_dense", "C"),
        ("pell", 1, norm(x**2 - 2, 2), "dense", "none"),
        ("cube_root", 2, norm(x**3 - 2, 3), "dense", "none"),
        ("zeta5", 3, norm(cyclotomic(5), 4), "not_dense", "C"),
        ("affine", 2, lines((1, 0, 0)), "dense", "none"),
    ]


CORPUS = None


def corpus():
    """(name, ambient_dim, specs, status, condition) for the S-infinity verdict corpus over Q."""
    global CORPUS
    if CORPUS is None:
        CORPUS = _corpus()
    return CORPUS


def random_unimodular(n, rng, steps=6):
    """An n x n integer matrix of determinant +-1 built from elementary moves."""
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        move = rng.randrange(3)
        if move == 0 and n > 1:
            c = rng.choice([-2, -1, 1, 2])
            for r in range(n):
                U[r][j] += c * U[r][i]
        elif move == 1 and n > 1:
            for r in range(n):
                U[r][i], U[r][j] = U[r][j], U[r][i]
        else:
            for r in range(n):
                U[r][i] = -U[r][i]
    return U


def transform_specs(specs, U):
    """Substitute x = U y: each coefficient row c becomes c U."""
    from dataclasses import replace

    from hyperdense import HyperplaneSpec

    out = []
    for s in specs:
        c = s.coeffs if isinstance(s, HyperplaneSpec) else s.basis
        n1 = len(U)
        new = tuple(sum((c[i] * U[i][j] for i in range(n1)), c[0] * 0) for j in range(n1))
        out.append(replace(s, coeffs=new) if isinstance(s, HyperplaneSpec) else replace(s, basis=new))
    return out


# ---------------------------------------------------------------- acceptance reporting

ACCEPTANCE = []
