import random
from fractions import Fraction as F

import pytest
from oracles import exterior_dim, free_dim, polynomial_dim

from koszulcalc.algebra import (AlgebraBimodule, BlockMismatch,
                                EnvelopingBimodule, RelationSpace,
                                ShiftedBimodule, TruncationExceeded,
                                build_algebra, exterior_preset,
                                preprojective_preset, symmetric_preset)
from koszulcalc.fields import GF, QQ
from koszulcalc.quiver import PathBasis, Quiver


class TestQuiver:
    def test_vertex_required(self):
        with pytest.raises(ValueError):
            Quiver([], [])

    def test_duplicate_arrow_rejected(self):
        with pytest.raises(ValueError):
            Quiver(["i"], [("a", "i", "i"), ("a", "i", "i")])

    def test_unknown_endpoint_rejected(self):
        with pytest.raises(ValueError):
            Quiver(["i"], [("a", "i", "j")])

    def test_path_basis_composability(self):
        q = Quiver(["u", "v"], [("a", "u", "v"), ("b", "v", "u")])
        paths = PathBasis(q, 2)
        # product-order adjacency: source of the left arrow equals the
        # target of the right arrow
        for t, s, arrows in paths.items:
            for x, y in zip(arrows, arrows[1:]):
                assert q.source[x] == q.target[y]

    def test_path_basis_lexicographic(self):
        q = Quiver(["i"], [("x", "i", "i"), ("y", "i", "i")])
        paths = PathBasis(q, 2)
        assert [lab[2] for lab in paths.items] == \
            [(0, 0), (0, 1), (1, 0), (1, 1)]


class TestPresets:
    def test_symmetric_relation_counts(self):
        # n=1 gives no relation, n=2 one commutator, n=3 three
        for n, expect in [(1, 0), (2, 1), (3, 3)]:
            _, r = symmetric_preset(n, QQ)
            assert r.dim == expect == n * (n - 1) // 2

    def test_exterior_relation_counts(self):
        for n, expect in [(1, 1), (2, 3)]:
            _, r = exterior_preset(n, QQ)
            assert r.dim == expect == n * (n + 1) // 2

    def test_exterior_char2_rank_decided_by_reduction(self):
        _, r = exterior_preset(2, GF(2))
        assert r.dim == 3

    def test_preprojective_a2(self):
        q, r = preprojective_preset([("1", "2")], QQ)
        assert q.n_vertices == 2 and q.n_arrows == 2
        assert r.dim == 2

    def test_preprojective_a3(self):
        q, r = preprojective_preset([("1", "2"), ("2", "3")], QQ)
        assert r.dim == 3

    def test_preprojective_relations_diagonal_blocks(self):
        q, r = preprojective_preset([("1", "2"), ("2", "3")], QQ)
        for vec in r.basis_vectors():
            blocks = {r.paths2.block(k) for k in vec}
            assert len(blocks) == 1
            (t, s), = blocks
            assert t == s

    def test_self_loop_rejected(self):
        with pytest.raises(ValueError):
            preprojective_preset([("1", "1")], QQ)


class TestBuildAlgebra:
    def test_polynomial_dims(self, kxy):
        assert [kxy.dim(m) for m in range(5)] == \
            [polynomial_dim(2, m) for m in range(5)]

    def test_free_algebra_dims(self):
        q, _ = symmetric_preset(2, QQ)
        A = build_algebra(q, RelationSpace(q, [], QQ), 5)
        assert [A.dim(m) for m in range(6)] == [free_dim(2, m) for m in range(6)]

    def test_exterior_dims(self):
        q, r = exterior_preset(2, QQ)
        A = build_algebra(q, r, 4)
        assert [A.dim(m) for m in range(5)] == [1, 2, 1, 0, 0]
        assert [A.dim(m) for m in range(5)] == \
            [exterior_dim(2, m) for m in range(5)]

    def test_symmetric_dims_against_counter(self):
        for n in (1, 2, 3, 4):
            q, r = symmetric_preset(n, QQ)
            A = build_algebra(q, r, 6)
            for m in range(7):
                assert A.dim(m) == polynomial_dim(n, m)

    def test_weight_one_is_arrow_space(self, kxy):
        assert kxy.dim(1) == kxy.quiver.n_arrows
        for a in range(kxy.dim(1)):
            assert kxy.basis(1)[a][2] == (a,)

    def test_mixed_block_relation_rejected(self):
        q = Quiver(["u", "v"], [("a", "u", "v"), ("b", "v", "u"),
                                ("c", "u", "u")])
        paths2 = PathBasis(q, 2)
        mixed = {paths2.index[(0, 1)]: F(1), paths2.index[(2, 2)]: F(1)}
        with pytest.raises(BlockMismatch):
            RelationSpace(q, [mixed], QQ)

    def test_truncation_is_loud(self, kxy):
        with pytest.raises(TruncationExceeded):
            kxy.multiply(3, {0: F(1)}, 3, {0: F(1)})

    def test_min_weight(self):
        q, r = symmetric_preset(2, QQ)
        with pytest.raises(ValueError):
            build_algebra(q, r, 1)


class TestMultiplication:
    def test_idempotents(self, preproj_a3):
        one = QQ.one
        for i in range(3):
            for j in range(3):
                got = preproj_a3.multiply(0, {i: one}, 0, {j: one})
                assert got == ({i: one} if i == j else {})

    def test_commutativity_in_polynomial_algebra(self, kxy):
        xy = kxy.multiply(1, {0: F(1)}, 1, {1: F(1)})
        yx = kxy.multiply(1, {1: F(1)}, 1, {0: F(1)})
        assert xy == yx != {}

    def test_exterior_square_zero(self):
        q, r = exterior_preset(2, QQ)
        A = build_algebra(q, r, 4)
        assert A.multiply(1, {0: F(1)}, 1, {0: F(1)}) == {}

    def test_unit_two_sided(self, preproj_a3):
        A = preproj_a3
        unit = A.unit()
        rng = random.Random(2)
        for m in (0, 1, 2):
            for k in range(A.dim(m)):
                v = {k: F(rng.randint(1, 3))}
                assert A.multiply(0, unit, m, v) == v
                assert A.multiply(m, v, 0, unit) == v

    def test_associativity_all_triples(self):
        q, r = preprojective_preset([("1", "2"), ("2", "3")], QQ)
        A = build_algebra(q, r, 4)
        one = QQ.one
        for r1 in range(0, 2):
            for r2 in range(0, 2):
                for r3 in range(0, 2):
                    for i in range(A.dim(r1)):
                        for j in range(A.dim(r2)):
                            for k in range(A.dim(r3)):
                                u, v, w = {i: one}, {j: one}, {k: one}
                                lhs = A.multiply(r1 + r2, A.multiply(r1, u, r2, v), r3, w)
                                rhs = A.multiply(r1, u, r2 + r3, A.multiply(r2, v, r3, w))
                                assert lhs == rhs


class TestBimodules:
    def test_enveloping_dims(self, kxy):
        Ae = EnvelopingBimodule(kxy)
        assert Ae.dim(0) == 1
        # convolution of [1, 2, 3] with itself at weight 2
        assert Ae.dim(2) == 1 * 3 + 2 * 2 + 3 * 1 == 10

    def test_enveloping_vertices(self):
        q, r = preprojective_preset([("1", "2")], QQ)
        A = build_algebra(q, r, 3)
        Ae = EnvelopingBimodule(A)
        assert Ae.dim(0) == A.quiver.n_vertices ** 2

    def test_enveloping_idempotent_actions(self):
        q, r = preprojective_preset([("1", "2")], QQ)
        A = build_algebra(q, r, 3)
        Ae = EnvelopingBimodule(A)
        one = QQ.one
        for k, (rr, iu, iv) in enumerate(Ae.basis(0)):
            i, j = Ae.block(0, k)
            for vtx in range(A.quiver.n_vertices):
                left = Ae.act_left(0, {vtx: one}, 0, {k: one})
                assert left == ({k: one} if vtx == i else {})
                right = Ae.act_right(0, {k: one}, 0, {vtx: one})
                assert right == ({k: one} if vtx == j else {})

    def test_actions_commute(self, preproj_a3):
        M = AlgebraBimodule(preproj_a3)
        one = QQ.one
        for a in range(preproj_a3.quiver.n_arrows):
            for b in range(preproj_a3.quiver.n_arrows):
                for k in range(M.dim(1)):
                    m = {k: one}
                    lhs = M.act_left(1, {a: one}, 2, M.act_right(1, m, 1, {b: one}))
                    rhs = M.act_right(2, M.act_left(1, {a: one}, 1, m), 1, {b: one})
                    assert lhs == rhs

    def test_shifted_module(self, kxy_calc):
        M = ShiftedBimodule(kxy_calc.regular, 2)
        assert M.dim(2) == 1 and M.dim(1) == 0
        assert M.dim(4) == kxy_calc.A.dim(2)

    def test_out_of_range_is_loud(self, kxy_calc):
        with pytest.raises(TruncationExceeded):
            kxy_calc.regular.dim(kxy_calc.A.T + 1)
