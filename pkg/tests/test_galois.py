import pytest

from hyperdense import (
    DegreeCapError,
    PermutationGroup,
    SubfieldEmbedding,
    Poly,
    automorphism_group,
    complex_conjugation,
    cyclotomic,
    fixed_field,
    galois_closure,
    make_field,
    roots_in_field,
    signature,
    splitting_field,
    subgroups_between,
)
from hyperdense.galois import compose, fixing_group, identity_perm, inverse

from helpers import relation_preserving_permutations

x = Poly.x()


def trivial(G):
    return PermutationGroup.generated(G.degree, [])


class TestPermutations:
    def test_compose_and_inverse(self):
        a = (1, 2, 0)
        assert compose(a, inverse(a)) == identity_perm(3)
        assert compose(a, a) == (2, 0, 1)

    def test_group_closure(self):
        G = PermutationGroup.generated(4, [(1, 2, 3, 0)])
        assert G.order == 4 and G.is_cyclic() and G.is_abelian()
        assert PermutationGroup.generated(3, [(1, 0, 2), (0, 2, 1)]).order == 6


class TestSplittingField:
    def test_quadratic(self):
        S = splitting_field(x**2 - 2)
        assert S.degree == 2 and len(S.roots) == 2

    def test_cube_root(self):
        S = splitting_field(x**3 - 2)
        assert S.degree == 6

    def test_cyclotomic_is_own_closure(self):
        S = splitting_field(cyclotomic(5))
        assert S.degree == 4

    @pytest.mark.parametrize(
        "p", [x**2 - 2, x**3 - 2, cyclotomic(5), x**4 - 2, (x**2 - 2) * (x**2 + 1), 2 * x**3 - 1, x**4 - x - 1]
    )
    def test_roots_are_roots(self, p):
        S = splitting_field(p)
        assert len(S.roots) == p.degree
        assert len({r.coords for r in S.roots}) == p.degree
        for r in S.roots:
            acc = S.field.zero()
            for c in reversed(p.coeffs):
                acc = acc * r + S.field.rational(c)
            assert acc.is_zero()

    def test_degree_cap(self):
        with pytest.raises(DegreeCapError):
            splitting_field(x**6 + x**5 + 1)

    def test_galois_closure(self):
        assert galois_closure(make_field(x**3 - 2)).degree == 6


class TestAutomorphisms:
    @pytest.mark.parametrize(
        "p, order, abelian, cyclic",
        [
            (x**2 - 2, 2, True, True),
            (x**3 - 2, 6, False, False),
            (cyclotomic(5), 4, True, True),
            (x**4 - 2, 8, False, False),
            ((x**2 - 2) * (x**2 + 1), 4, True, False),
        ],
    )
    def test_orders(self, p, order, abelian, cyclic):
        S = splitting_field(p)
        G = automorphism_group(S)
        assert G.order == order == S.degree
        assert (G.is_abelian(), G.is_cyclic()) == (abelian, cyclic)

    @pytest.mark.parametrize("p", [x**3 - 2, cyclotomic(5), x**4 - 2])
    def test_matches_relation_oracle(self, p):
        S = splitting_field(p)
        G = automorphism_group(S)
        assert sorted(G.elements) == relation_preserving_permutations(S.roots)

    @pytest.mark.parametrize("p", [x**3 - 2, x**4 - 2, cyclotomic(7)])
    def test_automorphisms_permute_roots(self, p):
        S = splitting_field(p)
        for g in automorphism_group(S).elements:
            for i, r in enumerate(S.roots):
                assert S.apply(g, r) == S.roots[g[i]]

    def test_over_subfield(self):
        S = splitting_field(x**4 - 2)
        Qi = make_field(x**2 + 1)
        i = roots_in_field(S.field, Qi.poly)[0]
        G = automorphism_group(S, SubfieldEmbedding(Qi, S.field, i))
        assert G.order == 4


class TestConjugation:
    def test_totally_real_is_identity(self):
        S = splitting_field(x**2 - 2)
        assert complex_conjugation(S) == (0, 1)

    def test_gaussian(self):
        S = splitting_field(x**2 + 1)
        assert complex_conjugation(S) == (1, 0)

    def test_zeta5_inverts(self):
        S = splitting_field(cyclotomic(5))
        tau = complex_conjugation(S)
        z = S.roots[0]
        assert S.apply(tau, z) == z**4

    @pytest.mark.parametrize("p", [x**3 - 2, x**4 - 2, cyclotomic(7), (x**2 - 3) * (x**2 + 1)])
    def test_involution_and_realness(self, p):
        S = splitting_field(p)
        tau = complex_conjugation(S)
        assert compose(tau, tau) == identity_perm(len(tau))
        totally_real = signature(S.field)[1] == 0
        assert (tau == identity_perm(len(tau))) == totally_real

    def test_independent_of_embedding_up_to_conjugacy(self):
        S = splitting_field(x**3 - 2)
        G = automorphism_group(S)
        t0 = complex_conjugation(S, 0)
        for j in range(S.degree):
            tj = complex_conjugation(S, j)
            assert any(compose(inverse(g), compose(t0, g)) == tj for g in G.elements)


class TestFixedFields:
    def test_extremes(self):
        S = splitting_field(x**4 - 2)
        G = automorphism_group(S)
        assert fixed_field(S, G)[0].degree == 1
        assert fixed_field(S, trivial(G))[0].degree == 8

    def test_real_subfield_of_zeta5(self):
        S = splitting_field(cyclotomic(5))
        H = PermutationGroup.generated(S.roots.__len__(), [complex_conjugation(S)])
        assert fixed_field(S, H)[0].poly == x**2 + x - 1

    @pytest.mark.parametrize("p", [x**3 - 2, x**4 - 2, cyclotomic(5), (x**2 - 2) * (x**2 + 1)])
    def test_correspondence(self, p):
        S = splitting_field(p)
        G = automorphism_group(S)
        for H in subgroups_between(trivial(G), G):
            F, emb = fixed_field(S, H)
            assert F.degree * H.order == G.order
            assert fixing_group(S, emb).element_set == H.element_set


class TestSubgroups:
    def test_counts(self):
        for p, count in ((cyclotomic(5), 3), (x**4 - 2, 10), ((x**2 - 2) * (x**2 + 1), 5)):
            S = splitting_field(p)
            G = automorphism_group(S)
            subs = subgroups_between(trivial(G), G)
            assert len(subs) == count

    def test_h_equals_g(self):
        S = splitting_field(x**3 - 2)
        G = automorphism_group(S)
        assert [H.element_set for H in subgroups_between(G, G)] == [G.element_set]

    def test_c4_chain(self):
        S = splitting_field(cyclotomic(5))
        G = automorphism_group(S)
        assert [H.order for H in subgroups_between(trivial(G), G)] == [1, 2, 4]
