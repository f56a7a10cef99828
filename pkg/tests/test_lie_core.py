from fractions import Fraction

import pytest

from deltader.lie_core import (
    AlgebraMismatch,
    HomomorphismViolation,
    IndexOutOfRange,
    JacobiViolation,
    NotDiagonal,
    adjoint_module,
    algebra_from_structure_constants,
    direct_sum_algebras,
    direct_sum_modules,
    invariants,
    representation_from_action,
    sl2,
    sl2_module,
    sl_n,
    tensor_module,
    trivial_module,
    weight_decomposition,
)
from deltader.linalg import commutator, identity, mat_mul

F = Fraction


def unit(n, i):
    v = [F(0)] * n
    v[i] = F(1)
    return v


class TestSl2:
    def test_multiplication_table(self, sl2):
        e_minus, h, e_plus = 0, 1, 2
        assert sl2.bracket_basis(h, e_minus) == [F(-2), F(0), F(0)]
        assert sl2.bracket_basis(h, e_plus) == [F(0), F(0), F(2)]
        assert sl2.bracket_basis(e_plus, e_minus) == [F(0), F(1), F(0)]

    def test_antisymmetry_on_basis(self, sl2):
        for x in range(3):
            assert sl2.bracket_basis(x, x) == [F(0)] * 3
        for i in range(3):
            for j in range(3):
                lhs = sl2.bracket_basis(i, j)
                rhs = [-c for c in sl2.bracket_basis(j, i)]
                assert lhs == rhs

    def test_labels_and_weights(self, sl2):
        assert sl2.basis_labels == ("e-", "h", "e+")
        assert sl2.basis_weights == (1, 0, -1)

    def test_perfect(self, sl2):
        assert sl2.commutant_dimension() == 3


class TestStructureConstantConstruction:
    def test_sl2_from_raw_entries(self, sl2):
        alg = algebra_from_structure_constants(
            3, [(0, 1, 0, 2), (0, 2, 1, -1), (1, 2, 2, 2)]
        )
        assert alg == sl2
        assert alg.structure == sl2.structure

    def test_abelian(self):
        alg = algebra_from_structure_constants(2, [])
        assert alg.dim == 2
        assert alg.structure == {}
        assert alg.commutant_dimension() == 0

    def test_jacobi_violation_detected(self):
        # [e0,e1] = e0, [e1,e2] = e2, [e0,e2] = e0 breaks the identity:
        # recomputing the three nested brackets by hand gives -e0.
        entries = [(0, 1, 0, 1), (1, 2, 2, 1), (0, 2, 0, 1)]
        with pytest.raises(JacobiViolation) as err:
            algebra_from_structure_constants(3, entries)
        assert err.value.triple == (0, 1, 2)
        assert err.value.residual == (F(-1), F(0), F(0))

    def test_jacobi_residual_matches_independent_expansion(self):
        # same data, residual recomputed without the library's bracket code
        table = {
            (0, 1): {0: F(1)},
            (1, 2): {2: F(1)},
            (0, 2): {0: F(1)},
        }

        def br(i, j):
            if i == j:
                return {}
            if i < j:
                return dict(table.get((i, j), {}))
            return {k: -c for k, c in table.get((j, i), {}).items()}

        def br_vec(vec, j):
            out = {}
            for a, c in vec.items():
                for k, d in br(a, j).items():
                    out[k] = out.get(k, F(0)) + c * d
            return out

        res = {}
        for term in (br_vec(br(0, 1), 2), br_vec(br(1, 2), 0), br_vec(br(2, 0), 1)):
            for k, c in term.items():
                res[k] = res.get(k, F(0)) + c
        assert {k: c for k, c in res.items() if c} == {0: F(-1)}

    def test_index_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            algebra_from_structure_constants(2, [(0, 1, 5, 1)])
        with pytest.raises(IndexOutOfRange):
            algebra_from_structure_constants(2, [(0, 3, 0, 1)])

    def test_lower_triangular_entries_rejected(self):
        with pytest.raises(ValueError):
            algebra_from_structure_constants(2, [(1, 0, 0, 1)])

    def test_duplicate_entries_accumulate(self):
        alg = algebra_from_structure_constants(2, [(0, 1, 0, 1), (0, 1, 0, -1)])
        assert alg.structure == {}

    def test_validation_can_be_skipped(self):
        entries = [(0, 1, 0, 1), (1, 2, 2, 1), (0, 2, 0, 1)]
        alg = algebra_from_structure_constants(3, entries, validate=False)
        assert alg.dim == 3  # constructed despite the broken identity


class TestSlN:
    def test_dimensions(self, sl3):
        assert sl_n(2)[0].dim == 3
        assert sl3.dim == 8

    def test_rejects_small_n(self):
        with pytest.raises(ValueError):
            sl_n(1)

    def test_sl2_identification(self, sl2):
        # basis order (E21, H1, E12) reproduces the (e-, h, e+) table exactly
        matrix_sl2, _ = sl_n(2)
        assert matrix_sl2.structure == sl2.structure

    def test_cartan_bracket(self):
        alg, nat = sl_n(2)
        # [H1, E12] = 2 E12 in both the abstract table and the matrices
        assert alg.bracket_basis(1, 2) == [F(0), F(0), F(2)]
        h = nat.action_matrix(1)
        e12 = nat.action_matrix(2)
        assert commutator(h, e12) == [[F(0), F(2)], [F(0), F(0)]]

    def test_natural_module_is_faithful_action(self, sl3, sl3_natural):
        assert sl3_natural.dim_v == 3
        assert sl3_natural.algebra == sl3

    def test_traceless(self, sl3_natural):
        for i in range(8):
            m = sl3_natural.action_matrix(i)
            assert sum(m[r][r] for r in range(3)) == 0


class TestDirectSumAlgebras:
    def test_two_summands(self, sl2):
        g = direct_sum_algebras([sl2, sl2])
        assert g.dim == 6
        assert g.summand_boundaries == ((0, 3), (3, 6))
        for i in range(3):
            for j in range(3, 6):
                assert g.bracket_basis(i, j) == [F(0)] * 6

    def test_single_summand_identity(self, sl2):
        assert direct_sum_algebras([sl2]) == sl2

    def test_associativity_up_to_flattening(self, sl2):
        abelian = algebra_from_structure_constants(2, [])
        left = direct_sum_algebras([direct_sum_algebras([sl2, abelian]), sl2])
        right = direct_sum_algebras([sl2, direct_sum_algebras([abelian, sl2])])
        assert left == right
        assert left.summand_boundaries == ((0, 3), (3, 5), (5, 8))

    def test_jacobi_holds_on_sum(self, sl2):
        # construction re-validates; reaching here means the check passed
        g = direct_sum_algebras([sl2, sl2])
        assert g.dim == 6


class TestSl2Modules:
    def test_h_action_n1(self):
        v1 = sl2_module(1)
        assert v1.action_matrix(1) == [[F(1), F(0)], [F(0), F(-1)]]

    def test_action_table_n3(self):
        v3 = sl2_module(3)
        lower = v3.action_matrix(0)
        upper = v3.action_matrix(2)
        assert lower[1][0] == 1 and lower[2][1] == 2 and lower[3][2] == 3
        assert upper[0][1] == 3 and upper[1][2] == 2 and upper[2][3] == 1

    def test_pair_relation(self):
        for n in range(5):
            rep = sl2_module(n)
            em, h, ep = (rep.action_matrix(i) for i in range(3))
            assert commutator(ep, em) == h

    def test_weights(self):
        assert sl2_module(2).weight_labels == (0, 1, 2)

    def test_negative_n_rejected(self):
        with pytest.raises(ValueError):
            sl2_module(-1)

    def test_v2_equivalent_to_adjoint(self, sl2):
        # explicit equivariant bijection: e- -> v2, h -> v1, e+ -> -v0
        phi = [[F(0), F(0), F(-1)], [F(0), F(1), F(0)], [F(1), F(0), F(0)]]
        v2 = sl2_module(2)
        adj = adjoint_module(sl2)
        for i in range(3):
            assert mat_mul(phi, adj.action_matrix(i)) == mat_mul(v2.action_matrix(i), phi)

    def test_v0_matches_trivial(self, sl2):
        assert sl2_module(0).action == trivial_module(sl2, 1).action


class TestAdjointAndTrivial:
    def test_adjoint_sl2_matrices(self, sl2):
        adj = adjoint_module(sl2)
        assert adj.dim_v == 3
        # ad(h) = diag(-2, 0, 2) on (e-, h, e+)
        assert adj.action_matrix(1) == [
            [F(-2), F(0), F(0)],
            [F(0), F(0), F(0)],
            [F(0), F(0), F(2)],
        ]

    def test_adjoint_of_abelian_is_zero(self):
        abelian = algebra_from_structure_constants(3, [])
        adj = adjoint_module(abelian)
        assert all(all(x == 0 for row in m for x in row) for m in adj.action)

    def test_trivial_module(self, sl2):
        rep = trivial_module(sl2, 4)
        assert rep.dim_v == 4
        assert len(invariants(rep)) == 4
        assert len(invariants(trivial_module(sl2, 0))) == 0


class TestDirectSumModules:
    def test_block_diagonal(self, sl2):
        v1 = sl2_module(1)
        s = direct_sum_modules([v1, v1])
        assert s.dim_v == 4
        m = s.action_matrix(0)
        assert m[1][0] == 1 and m[3][2] == 1
        assert m[1][2] == 0 and m[3][0] == 0

    def test_single_part_identity(self):
        v1 = sl2_module(1)
        assert direct_sum_modules([v1]).action == v1.action

    def test_algebra_mismatch(self, sl2, sl3, sl3_natural):
        with pytest.raises(AlgebraMismatch):
            direct_sum_modules([sl2_module(1), sl3_natural])

    def test_invariants_additive(self, sl2):
        for a in range(3):
            for b in range(3):
                va, vb = sl2_module(a), sl2_module(b)
                s = direct_sum_modules([va, vb])
                assert len(invariants(s)) == len(invariants(va)) + len(invariants(vb))

    def test_weight_labels_concatenate(self):
        s = direct_sum_modules([sl2_module(1), sl2_module(2)])
        assert s.weight_labels == (0, 1, 0, 1, 2)

    def test_associative_up_to_flattening(self):
        a, b, c = sl2_module(0), sl2_module(1), sl2_module(2)
        left = direct_sum_modules([direct_sum_modules([a, b]), c])
        right = direct_sum_modules([a, direct_sum_modules([b, c])])
        assert left.action == right.action
        assert left.weight_labels == right.weight_labels


class TestTensorModules:
    def test_dimensions(self):
        t = tensor_module(sl2_module(2), sl2_module(2))
        assert t.dim_v == 9
        assert t.algebra.dim == 6

    def test_second_factor_trivial(self):
        t = tensor_module(sl2_module(1), sl2_module(0))
        for i in range(3, 6):
            assert all(x == 0 for row in t.action[i] for x in row)
        # first summand acts exactly as on the plain module
        assert t.action_matrix(0) == sl2_module(1).action_matrix(0)

    def test_invariants_multiply(self):
        mods = [sl2_module(n) for n in range(3)]
        for v1 in mods:
            for v2 in mods:
                t = tensor_module(v1, v2)
                assert len(invariants(t)) == len(invariants(v1)) * len(invariants(v2))

    def test_mixed_algebras(self, sl3_natural):
        t = tensor_module(sl2_module(1), sl3_natural)
        assert t.algebra.dim == 11
        assert t.dim_v == 6


class TestInvariants:
    def test_irreducible_nontrivial_has_none(self):
        for n in range(1, 5):
            assert invariants(sl2_module(n)) == ()

    def test_trivial_line(self):
        assert len(invariants(sl2_module(0))) == 1

    def test_adjoint_sl2_centerless(self, sl2):
        assert invariants(adjoint_module(sl2)) == ()

    def test_invariant_vectors_are_killed(self, sl2):
        rep = direct_sum_modules([sl2_module(0), sl2_module(2)])
        basis = invariants(rep)
        assert len(basis) == 1
        for v in basis:
            for i in range(3):
                assert all(x == 0 for x in rep.act(i, list(v)))


class TestRepresentationValidation:
    def test_homomorphism_violation(self, sl2):
        mats = [[[F(0)]], [[F(0)]], [[F(1)]]]
        with pytest.raises(HomomorphismViolation) as err:
            representation_from_action(sl2, mats)
        assert err.value.pair == (1, 2)

    def test_wrong_count_rejected(self, sl2):
        with pytest.raises(ValueError):
            representation_from_action(sl2, [identity(2)] * 2)


class TestWeightDecomposition:
    def test_sl2_v1(self, sl2):
        decomp = weight_decomposition(sl2, sl2_module(1), 1)
        assert decomp == [
            (F(-2), (0,), ()),
            (F(-1), (), (1,)),
            (F(0), (1,), ()),
            (F(1), (), (0,)),
            (F(2), (2,), ()),
        ]

    def test_module_eigenvalues(self, sl2):
        for n in (2, 4):
            decomp = weight_decomposition(sl2, sl2_module(n), 1)
            mu = {}
            for w, _, mod_idx in decomp:
                for m in mod_idx:
                    mu[m] = w
            assert mu == {i: F(n - 2 * i) for i in range(n + 1)}

    def test_not_diagonal(self, sl2):
        with pytest.raises(NotDiagonal):
            weight_decomposition(sl2, sl2_module(1), 0)

    def test_abelian_zero_action_single_block(self):
        abelian = algebra_from_structure_constants(2, [])
        rep = trivial_module(abelian, 3)
        decomp = weight_decomposition(abelian, rep, 0)
        assert decomp == [(F(0), (0, 1), (0, 1, 2))]

    def test_index_out_of_range(self, sl2):
        with pytest.raises(IndexOutOfRange):
            weight_decomposition(sl2, sl2_module(1), 7)
