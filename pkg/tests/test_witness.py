from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hyperdense import (
    DimensionError,
    NormComponentSpec,
    NotAUnitError,
    NotCMError,
    Poly,
    build_arrangement,
    cm_vanishing_forms,
    cyclotomic,
    embeddings_over,
    empirical_density,
    identity_embedding,
    product_points,
    make_field,
    make_unit_supply,
    rational_embedding,
    rational_field,
    roots_in_field,
    SubfieldEmbedding,
    splitting_field,
    torsion_units,
    unit_points,
    verify_integrality,
    verify_multiplicative_identity,
)
from hyperdense.witness import integrality_denominators

from helpers import power_basis

x = Poly.x()
Q = rational_field()


@pytest.fixture(scope="module")
def zeta5():
    return make_field(cyclotomic(5))


@pytest.fixture(scope="module")
def zeta5_forms(zeta5):
    return cm_vanishing_forms(rational_embedding(zeta5), power_basis(zeta5))


class TestTorsion:
    @pytest.mark.parametrize(
        "poly, w",
        [
            (x**2 - 2, 2),
            (x**3 - 2, 2),
            (x**2 + 1, 4),
            (x**2 + 3, 6),
            (x**2 + x + 1, 6),
            (cyclotomic(5), 10),
            (cyclotomic(8), 8),
            (cyclotomic(12), 12),
            (x**4 - 2 * x**2 + 9, 8),  # Q(sqrt2 + i) = Q(zeta8)
            (x**2 + 7, 2),
        ],
    )
    def test_order(self, poly, w):
        K = make_field(poly)
        n, zeta = torsion_units(K)
        assert n == w
        assert zeta**w == K.one()
        for p in (2, 3, 5):
            if w % p == 0:
                assert zeta ** (w // p) != K.one()

    def test_rational(self):
        assert torsion_units(Q)[0] == 2


class TestUnits:
    def test_non_unit_rejected(self):
        K = make_field(x**2 - 2)
        with pytest.raises(NotAUnitError):
            make_unit_supply(K, [K.rational(2)])
        with pytest.raises(NotAUnitError):
            make_unit_supply(K, [K.zero()])

    def test_norm_one_but_not_integral(self):
        # (3 + 4i)/5 has norm 1 but is not an algebraic integer
        K = make_field(x**2 + 1)
        with pytest.raises(NotAUnitError):
            make_unit_supply(K, [K.element([Fraction(3, 5), Fraction(4, 5)])])

    def test_s_unit(self):
        K = make_field(x**2 - 2)
        make_unit_supply(K, [K.gen()], primes=(2,))
        with pytest.raises(NotAUnitError):
            make_unit_supply(K, [K.gen()])

    def test_pell_count(self):
        K = make_field(x**2 - 2)
        s = make_unit_supply(K, [K.element([1, 1])])
        pts = unit_points(s, power_basis(K), 25)
        assert len(pts) == 51

    def test_gaussian_points(self):
        K = make_field(x**2 + 1)
        pts = unit_points(make_unit_supply(K, []), power_basis(K), 5)
        assert set(pts.points) == {(1, 0), (0, 1)}

    def test_basis_must_be_independent(self):
        K = make_field(x**2 - 2)
        s = make_unit_supply(K, [])
        with pytest.raises(DimensionError):
            unit_points(s, [K.one(), K.rational(2)], 1)
        with pytest.raises(DimensionError):
            unit_points(s, [K.one()], 1)

    def test_relative_coordinates(self):
        # Q(2^{1/4}) over Q(sqrt2): points in P^1 with coordinates in k
        M = make_field(x**4 - 2)
        k = make_field(x**2 - 2)
        k_in = SubfieldEmbedding(k, M, M.gen() ** 2)
        s = make_unit_supply(M, [M.element([1, 1])])
        pts = unit_points(s, [M.one(), M.gen()], 3, k_in)
        assert pts.ambient_dim == 1
        assert all(c.field == k for p in pts.points for c in p if not isinstance(c, Fraction))

    @settings(max_examples=25)
    @given(e=st.integers(-12, 12))
    def test_pell_points_are_integral(self, e):
        K = make_field(x**2 - 2)
        u = K.element([1, 1]) ** e if e >= 0 else K.element([1, 1]).inverse() ** (-e)
        a, b = u.coords
        assert a * a - 2 * b * b in (1, -1)


    @settings(max_examples=8)
    @given(B=st.integers(0, 12))
    def test_pell_count_is_2b_plus_1(self, B):
        K = make_field(x**2 - 2)
        pts = unit_points(make_unit_supply(K, [K.element([1, 1])]), power_basis(K), B)
        assert len(pts) == 2 * B + 1
        if B == 0:
            assert pts.points == ((1, 0),)


class TestProductPoints:
    def test_rational_blocks_are_finite(self):
        one = make_unit_supply(Q, [])
        pts = product_points([(one, [Q.one()], None)] * 2, 3, extra=1, box=2)
        # (+-1 : +-1 : c) up to sign, c in [-2, 2]
        assert len(pts) == 10 and pts.ambient_dim == 2

    def test_real_quadratic_blocks_are_dense(self):
        k = make_field(x**2 - 2)
        s = make_unit_supply(k, [k.element([1, 1])])
        pts = product_points([(s, [k.one()], identity_embedding(k))] * 2, 3, extra=1, box=2)
        rep = empirical_density(pts, 4, forms=False)
        assert all(p.full_rank for p in rep.probes)

    def test_blocks_follow_their_bases(self):
        Qi = make_field(x**2 + 1)
        R2 = make_field(x**2 - 2)
        blocks = [
            (make_unit_supply(Qi, []), power_basis(Qi), None),
            (make_unit_supply(R2, [R2.element([1, 1])]), power_basis(R2), None),
        ]
        pts = product_points(blocks, 2)
        assert pts.ambient_dim == 3
        for p in pts.points:
            assert p[0] * p[0] + p[1] * p[1] != 0
            assert p[2] * p[2] - 2 * p[3] * p[3] != 0

    def test_base_field_mismatch(self):
        k = make_field(x**2 - 2)
        with pytest.raises(ValueError):
            product_points(
                [(make_unit_supply(Q, []), [Q.one()], None), (make_unit_supply(k, []), [k.one()], identity_embedding(k))], 1
            )


class TestIntegrality:
    def test_pell(self):
        K = make_field(x**2 - 2)
        A = build_arrangement(Q, 1, [NormComponentSpec(K, power_basis(K))])
        pts = unit_points(make_unit_supply(K, [K.element([1, 1])]), power_basis(K), 10)
        assert set(integrality_denominators(A, pts)) == {1}
        assert verify_integrality(A, pts)

    def test_single_gaussian_point(self):
        from hyperdense import ProjectivePointSet

        Qi = make_field(x**2 + 1)
        A = build_arrangement(Q, 1, [NormComponentSpec(Qi, power_basis(Qi))])
        pts = ProjectivePointSet(1, ((Fraction(1), Fraction(1)),))
        assert integrality_denominators(A, pts) == [2]
        assert verify_integrality(A, pts)

    def test_non_unit_family_fails(self):
        from hyperdense import ProjectivePointSet

        K = make_field(x**2 - 2)
        A = build_arrangement(Q, 1, [NormComponentSpec(K, power_basis(K))])
        # powers of 3 + sqrt2 (norm 7): norms grow along the family
        g = K.element([3, 1])
        pts, u = [], K.one()
        for _ in range(6):
            u = u * g
            a, b = u.coords
            pts.append((Fraction(1), b / a))
        assert not verify_integrality(A, ProjectivePointSet(1, tuple(pts)))
        assert verify_integrality(A, ProjectivePointSet(1, tuple(pts)), bound=7**6)


class TestProbe:
    def test_two_points_degree_two(self):
        from hyperdense import MPoly, ProjectivePointSet

        pts = ProjectivePointSet(1, ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))))
        (probe,) = empirical_density(pts, 2).probes[1:]
        assert probe.rank == 2 and probe.insufficient_points
        assert probe.vanishing_forms == (MPoly.variable(2, 0) * MPoly.variable(2, 1),)

    def test_positive_direction_through_degree_six(self):
        # Q(sqrt2, sqrt3) is totally real: no CM subfield, so no low-degree vanishing form
        M = make_field(x**4 - 10 * x**2 + 1)  # sqrt2 + sqrt3
        a = M.gen()
        s2 = (a**3 - 9 * a) * Fraction(1, 2)
        s3 = (11 * a - a**3) * Fraction(1, 2)
        assert s2 * s2 == M.rational(2) and s3 * s3 == M.rational(3)
        gens = [1 + s2, 2 + s3, a]
        pts = unit_points(make_unit_supply(M, gens), power_basis(M), 2)
        assert len(pts) >= 84
        rep = empirical_density(pts, 6, forms=False)
        assert all(p.full_rank for p in rep.probes)

    def test_cube_root_through_degree_six(self):
        C = make_field(x**3 - 2)
        pts = unit_points(make_unit_supply(C, [C.element([1, 1, 1])]), power_basis(C), 14)
        assert len(pts) >= 28
        assert all(p.full_rank for p in empirical_density(pts, 6, forms=False).probes)

    def test_pell_full_rank(self):
        K = make_field(x**2 - 2)
        pts = unit_points(make_unit_supply(K, [K.element([1, 1])]), power_basis(K), 8)
        rep = empirical_density(pts, 6)
        assert rep.vanishing_degrees() == []
        assert all(p.rank == p.degree + 1 for p in rep.probes)

    def test_gaussian_vanishing(self):
        K = make_field(x**2 + 1)
        pts = unit_points(make_unit_supply(K, []), power_basis(K), 1)
        rep = empirical_density(pts, 3)
        # two points in P^1: degree 1 is full rank, degrees 2 and 3 are not
        assert [p.full_rank for p in rep.probes] == [True, False, False]
        assert rep.probes[1].insufficient_points
        for f in rep.probes[2].vanishing_forms:
            assert all(f(list(p)) == 0 for p in pts.points)

    def test_forms_vanish(self, zeta5):
        pts = unit_points(make_unit_supply(zeta5, [zeta5.element([1, 1])]), power_basis(zeta5), 2)
        rep = empirical_density(pts, 3)
        for probe in rep.probes:
            for f in probe.vanishing_forms:
                assert f
                assert all(f(list(p)) == 0 for p in pts.points)


class TestIdentity:
    def conjugate_index(self, embs):
        z0 = embs[0].image
        return next(j for j, e in enumerate(embs) if e.image * z0 == e.target.one())

    def test_units_of_zeta5(self, zeta5):
        S = splitting_field(zeta5.poly)
        embs = embeddings_over(S, zeta5)
        j = self.conjugate_index(embs)
        a = [0] * 4
        b = [0] * 4
        a[0], b[j] = 10, 10
        assert verify_multiplicative_identity(embs, zeta5.element([1, 1]), a, b)
        assert not verify_multiplicative_identity(embs, zeta5.element([2, 1]), a, b)

    def test_gaussian_i(self):
        K = make_field(x**2 + 1)
        embs = embeddings_over(splitting_field(K.poly), K)
        assert verify_multiplicative_identity(embs, K.gen(), [4, 0], [0, 4])
        assert not verify_multiplicative_identity(embs, K.gen(), [1, 0], [0, 1])

    def test_real_unit_of_zeta5(self, zeta5):
        S = splitting_field(zeta5.poly)
        embs = embeddings_over(S, zeta5)
        j = self.conjugate_index(embs)
        others = [i for i in range(4) if i not in (0, j)]
        a, b = [0] * 4, [0] * 4
        a[0] = a[others[0]] = 10
        b[j] = b[[i for i in range(4) if embs[i].image * embs[others[0]].image == zeta5.one()][0]] = 10
        golden = zeta5.element([1, 1, 0, 0]) + zeta5.gen() ** 4
        assert verify_multiplicative_identity(embs, golden, a, b)
        assert verify_multiplicative_identity(embs, zeta5.gen(), a, b)

    @settings(max_examples=10)
    @given(e1=st.integers(-3, 3), e2=st.integers(-3, 3))
    def test_identity_is_multiplicative(self, zeta5, e1, e2):
        S = splitting_field(zeta5.poly)
        embs = embeddings_over(S, zeta5)
        j = self.conjugate_index(embs)
        a, b = [0] * 4, [0] * 4
        a[0], b[j] = 10, 10
        u = zeta5.element([1, 1])
        xs = [u**e1 if e1 >= 0 else u.inverse() ** -e1, zeta5.element([0, 1, 1]) ** (e2 % 4 + 1)]
        holds = [verify_multiplicative_identity(embs, v, a, b) for v in xs]
        if all(holds):
            assert verify_multiplicative_identity(embs, xs[0] * xs[1], a, b)

    def test_pell_fails(self):
        K = make_field(x**2 - 2)
        embs = embeddings_over(splitting_field(K.poly), K)
        assert not verify_multiplicative_identity(embs, K.element([1, 1]), [2, 0], [0, 2])

    def test_validation(self):
        K = make_field(x**2 - 2)
        embs = embeddings_over(splitting_field(K.poly), K)
        with pytest.raises(ValueError):
            verify_multiplicative_identity(embs, K.one(), [1, 0], [0, 2])
        with pytest.raises(ValueError):
            verify_multiplicative_identity(embs, K.one(), [-1, 0], [0, -1])
        with pytest.raises(DimensionError):
            verify_multiplicative_identity(embs, K.one(), [1], [1])


class TestCMForms:
    def test_gaussian(self):
        K = make_field(x**2 + 1)
        m, forms = cm_vanishing_forms(rational_embedding(K), power_basis(K))
        assert m == 8
        assert forms and all(f for f in forms)
        pts = unit_points(make_unit_supply(K, []), power_basis(K), 5)
        assert all(f(list(p)) == 0 for f in forms for p in pts.points)

    def test_zeta5(self, zeta5, zeta5_forms):
        m, forms = zeta5_forms
        assert m == 20 and len(forms) == 2
        pts = unit_points(make_unit_supply(zeta5, [zeta5.element([1, 1])]), power_basis(zeta5), 3)
        assert all(f(list(p)) == 0 for f in forms for p in pts.points)

    @settings(max_examples=15)
    @given(e1=st.integers(-4, 4), e2=st.integers(-4, 4), t=st.integers(0, 9))
    def test_zeta5_random_units(self, zeta5, zeta5_forms, e1, e2, t):
        z = zeta5.gen()
        u1, u2 = zeta5.element([1, 1]), zeta5.element([1, 0, 1])
        u = (-z) ** t
        u = u * (u1**e1 if e1 >= 0 else u1.inverse() ** -e1)
        u = u * (u2**e2 if e2 >= 0 else u2.inverse() ** -e2)
        _, forms = zeta5_forms
        assert all(f(list(u.coords)) == 0 for f in forms)

    def test_not_units_are_caught(self, zeta5, zeta5_forms):
        _, forms = zeta5_forms
        assert any(f(list(zeta5.element([2, 1]).coords)) != 0 for f in forms)

    def test_pell_has_none(self):
        K = make_field(x**2 - 2)
        with pytest.raises(NotCMError):
            cm_vanishing_forms(rational_embedding(K))

    def test_zeta8(self):
        M = make_field(cyclotomic(8))
        m, forms = cm_vanishing_forms(rational_embedding(M), power_basis(M))
        assert m == 16 and len(forms) == 2
        u = M.element([1, 1, 1])
        pts = unit_points(make_unit_supply(M, [u]), power_basis(M), 2)
        assert all(f(list(p)) == 0 for f in forms for p in pts.points)

    def test_over_real_quadratic(self):
        # M = Q(zeta8) over k = Q(sqrt2): L = M, forms have coefficients in k
        M = make_field(cyclotomic(8))
        k = make_field(x**2 - 2)
        k_in = SubfieldEmbedding(k, M, roots_in_field(M, k.poly)[0])
        m, forms = cm_vanishing_forms(k_in, [M.one(), M.gen()])
        assert m == 16 and forms
        pts = unit_points(make_unit_supply(M, [M.element([1, 1, 1])]), [M.one(), M.gen()], 2, k_in)
        assert all(f(list(p)) == 0 for f in forms for p in pts.points)
