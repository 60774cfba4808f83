from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from hyperdense import (
    CertificationError,
    Poly,
    count_real_roots,
    cyclotomic,
    embeddings_of,
    is_totally_imaginary,
    is_totally_real,
    isolate_real_roots,
    isolate_roots,
    make_field,
    rational_field,
    signature,
    unit_rank,
)
from hyperdense.polynomial import squarefree_part

x = Poly.x()
X = sympy.Symbol("x")

squarefree = (
    st.lists(st.integers(-8, 8), min_size=2, max_size=8)
    .map(Poly)
    .filter(lambda p: p.degree >= 1)
    .map(squarefree_part)
)


class TestRealRoots:
    def test_examples(self):
        assert len(isolate_real_roots(x**2 - 2)) == 2
        assert isolate_real_roots(x**2 + 1) == []
        assert len(isolate_real_roots(x**3 - 2)) == 1

    def test_non_squarefree_rejected(self):
        with pytest.raises(ValueError):
            isolate_real_roots((x - 1) ** 2)

    @given(squarefree)
    def test_intervals_certified_and_counted(self, p):
        ivs = isolate_real_roots(p)
        assert len(ivs) == count_real_roots(p) == len(sympy.Poly(p.coeffs[::-1], X).real_roots())
        for lo, hi in ivs:
            assert count_real_roots(p, lo, hi) == 1 or lo == hi
        assert all(a[1] < b[0] for a, b in zip(ivs, ivs[1:]))


class TestEmbeddingSet:
    def test_gaussian(self):
        E = isolate_roots(x**2 + 1)
        assert (E.r1, E.r2) == (0, 1)
        assert E.conjugation == (1, 0)

    def test_cube_root(self):
        E = isolate_roots(x**3 - 2)
        assert (E.r1, E.r2) == (1, 1)

    def test_cyclotomic(self):
        E = isolate_roots(cyclotomic(5))
        assert (E.r1, E.r2) == (0, 2)

    @given(squarefree)
    def test_invariants(self, p):
        E = isolate_roots(p)
        n = p.degree
        assert E.r1 + 2 * E.r2 == n
        conj = E.conjugation
        assert all(conj[conj[i]] == i for i in range(n))
        assert [i for i in range(n) if conj[i] == i] == list(range(E.r1))
        for i, j in enumerate(conj):
            if i != j:
                assert E.boxes[i].conjugate() == E.boxes[j]
        for i in range(n):
            for j in range(i + 1, n):
                assert E.boxes[i].disjoint(E.boxes[j])

    @given(squarefree)
    def test_boxes_contain_numeric_roots(self, p):
        E = isolate_roots(p)
        mpmath.mp.prec = 200
        roots = mpmath.polyroots([mpmath.mpf(c.numerator) / c.denominator for c in reversed(p.coeffs)],
                                 maxsteps=400, extraprec=400)
        def inside(b, r):
            lo, hi = (mpmath.mpf(v.numerator) / v.denominator for v in b.re)
            ilo, ihi = (mpmath.mpf(v.numerator) / v.denominator for v in b.im)
            return lo - tol <= r.real <= hi + tol and ilo - tol <= r.imag <= ihi + tol

        tol = mpmath.mpf(2) ** -150
        for r in roots:
            assert sum(inside(b, r) for b in E.boxes) == 1

    def test_refinement_keeps_signature(self):
        p = x**4 - 2
        coarse = isolate_roots(p)
        fine = isolate_roots(p, precision=Fraction(1, 2**200))
        assert (coarse.r1, coarse.r2, coarse.conjugation) == (fine.r1, fine.r2, fine.conjugation)
        for a, b in zip(coarse.boxes, fine.boxes):
            assert not a.disjoint(b)

    def test_close_pair_needs_fine_floor(self):
        # upper roots 1/3 + i and 1/3 + i(1 + 2^-300) cannot be told apart at 2^-64
        c = x - Fraction(1, 3)
        p = (c * c + 1) * (c * c + (1 + Fraction(1, 2**300)) ** 2)
        with pytest.raises(CertificationError):
            isolate_roots(p, floor=Fraction(1, 2**64))
        E = isolate_roots(p)
        assert (E.r1, E.r2) == (0, 2)
        assert E.boxes[2].disjoint(E.boxes[3])

    def test_approximation(self):
        E = embeddings_of(make_field(x**2 - 2))
        assert abs(E.approx(1, 100) - mpmath.sqrt(2)) < mpmath.mpf(2) ** -90

    def test_json_shape(self):
        data = isolate_roots(x**2 + 1).to_json()
        assert data["signature"] == {"r1": 0, "r2": 1}


class TestSignature:
    def test_examples(self):
        assert signature(rational_field()) == (1, 0)
        assert signature(make_field(x**2 - 2)) == (2, 0)
        assert signature(make_field(x**4 - 2)) == (2, 1)

    def test_predicates(self):
        assert is_totally_real(make_field(x**2 - 2))
        assert is_totally_imaginary(make_field(cyclotomic(7)))
        assert not is_totally_real(make_field(x**3 - 2))


class TestUnitRank:
    def test_examples(self):
        assert unit_rank(rational_field(), 0) == 0
        assert unit_rank(make_field(x**2 + 1), 0) == 0
        assert unit_rank(make_field(x**2 - 2), 0) == 1
        assert unit_rank(make_field(x**2 + 1), 2) == 2

    @pytest.mark.parametrize(
        "p",
        [x**2 + 1, x**2 + 3, x**2 - 2, x**3 - 2, cyclotomic(5), x**4 - 2, x**4 - 10 * x**2 + 1, x**3 - 3 * x + 1],
    )
    def test_zero_only_for_q_and_imaginary_quadratic(self, p):
        K = make_field(p)
        r1, r2 = signature(K)
        assert (unit_rank(K) == 0) == (K.degree == 2 and r2 == 1)

    def test_negative_places_rejected(self):
        with pytest.raises(ValueError):
            unit_rank(rational_field(), -1)
