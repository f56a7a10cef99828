import random
from fractions import Fraction

import pytest

from deltader.exact_arith import Poly
from deltader.linalg import (
    _pdivexact,
    _pmul,
    _psub,
    canonical_basis,
    identity,
    ipoly_from_poly,
    kron,
    mat_mul,
    nullspace_bareiss,
    nullspace_gauss,
    pencil_eliminate,
    rank,
    rref,
    spans_equal,
)

F = Fraction


def random_matrix(rng, rows, cols):
    def entry():
        if rng.random() < 0.35:
            return F(0)
        return F(rng.randint(-6, 6), rng.randint(1, 4))

    return [[entry() for _ in range(cols)] for _ in range(rows)]


class TestRref:
    def test_hand_case(self):
        m = [[F(2), F(4)], [F(1), F(2)]]
        reduced, pivots = rref(m)
        assert pivots == [0]
        assert reduced[0] == [F(1), F(2)]

    def test_identity_fixed_point(self):
        reduced, pivots = rref(identity(3))
        assert reduced == identity(3)
        assert pivots == [0, 1, 2]

    def test_rank(self):
        assert rank([[F(1), F(2)], [F(2), F(4)], [F(0), F(1)]]) == 2
        assert rank([]) == 0


class TestCanonicalBasis:
    def test_scaling_invariance(self):
        v = [F(2), F(4), F(0)]
        w = [F(1), F(2), F(0)]
        assert canonical_basis([v]) == canonical_basis([w])
        assert spans_equal([v], [w])

    def test_distinct_spans_differ(self):
        assert not spans_equal([[F(1), F(0)]], [[F(0), F(1)]])

    def test_zero_vectors_dropped(self):
        assert canonical_basis([[F(0), F(0)]]) == ()


class TestNullspaceRoutes:
    def test_zero_matrix_gives_full_space(self):
        basis = nullspace_bareiss([[F(0)] * 3], 3)
        assert basis == tuple(tuple(row) for row in identity(3))
        assert nullspace_gauss([[F(0)] * 3], 3) == basis

    def test_no_rows_gives_full_space(self):
        assert nullspace_bareiss([], 2) == ((F(1), F(0)), (F(0), F(1)))

    def test_full_rank_gives_empty_kernel(self):
        assert nullspace_bareiss(identity(4), 4) == ()

    def test_hand_kernel(self):
        # x + y + z = 0, y - z = 0  ->  kernel spanned by (-2, 1, 1)
        m = [[F(1), F(1), F(1)], [F(0), F(1), F(-1)]]
        basis = nullspace_bareiss(m, 3)
        assert basis == ((F(1), F(-1, 2), F(-1, 2)),)
        assert nullspace_gauss(m, 3) == basis

    def test_routes_agree_on_random_matrices(self):
        rng = random.Random(424242)
        for _ in range(60):
            rows = rng.randint(0, 8)
            cols = rng.randint(1, 10)
            m = random_matrix(rng, rows, cols)
            got = nullspace_bareiss(m, cols)
            want = nullspace_gauss(m, cols)
            assert got == want

    def test_kernel_vectors_annihilate(self):
        rng = random.Random(5)
        for _ in range(30):
            m = random_matrix(rng, 5, 7)
            for v in nullspace_bareiss(m, 7):
                assert all(
                    sum(row[j] * v[j] for j in range(7)) == 0 for row in m
                )


class TestKron:
    def test_row_major_pairing(self):
        a = [[F(1), F(2)], [F(0), F(3)]]
        b = [[F(5)]]
        assert kron(a, b) == [[F(5), F(10)], [F(0), F(15)]]

    def test_block_structure(self):
        a = [[F(2)]]
        b = [[F(1), F(0)], [F(0), F(1)]]
        assert kron(a, b) == [[F(2), F(0)], [F(0), F(2)]]
        assert kron(b, a) == [[F(2), F(0)], [F(0), F(2)]]

    def test_mixes_indices_correctly(self):
        a = [[F(0), F(1)], [F(0), F(0)]]
        m = kron(a, identity(3))
        # entry ((0, r), (1, r)) = 1 means column 1*3+r -> row 0*3+r
        for r in range(3):
            assert m[r][3 + r] == 1

    def test_multiplicativity(self):
        a = [[F(1), F(2)], [F(3), F(4)]]
        b = [[F(0), F(1)], [F(1), F(1)]]
        assert mat_mul(kron(a, b), kron(a, b)) == kron(mat_mul(a, a), mat_mul(b, b))


class TestIntPolynomials:
    def test_mul_and_sub(self):
        assert _pmul((1, 1), (1, 1)) == (1, 2, 1)
        assert _psub((1, 2, 1), (1, 2, 1)) == ()
        assert _pmul((), (1, 2)) == ()

    def test_exact_division(self):
        assert _pdivexact((1, 2, 1), (1, 1)) == (1, 1)
        with pytest.raises(ArithmeticError):
            _pdivexact((1, 1), (2,))

    def test_ipoly_round_trip(self):
        p = Poly([F(1, 2), F(-1, 3)])
        assert ipoly_from_poly(p) == (3, -2)


class TestPencilEliminate:
    def test_regular_pencil(self):
        d = (0, 1)
        one = (1,)
        rows = [[one, d], [d, one]]
        pivots, r = pencil_eliminate(rows, 2)
        assert r == 2
        assert [p.coeffs for p in pivots] == [(F(1),), (F(1), F(0), F(-1))]

    def test_identically_singular_pencil(self):
        d = (0, 1)
        rows = [[(1,), d], [(2,), (0, 2)]]
        pivots, r = pencil_eliminate(rows, 2)
        assert r == 1
        assert pivots[0].coeffs == (F(1),)

    def test_prefers_low_degree_pivots(self):
        d = (0, 1)
        rows = [[d, (1,)], [(2, 1), d]]
        pivots, r = pencil_eliminate(rows, 2)
        assert r == 2
        # the constant at (row 0, col 1) beats both degree-1 entries in col 0
        assert pivots[0].coeffs == (F(1),)

    def test_degree_ties_break_by_column(self):
        d = (0, 1)
        rows = [[d, (1,)], [(3,), d]]
        pivots, r = pencil_eliminate(rows, 2)
        assert r == 2
        assert pivots[0].coeffs == (F(3),)

    def test_zero_matrix(self):
        pivots, r = pencil_eliminate([[(), ()], [(), ()]], 2)
        assert pivots == [] and r == 0
