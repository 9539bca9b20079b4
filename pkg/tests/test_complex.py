import random
from fractions import Fraction as F

import pytest
from oracles import homology_dim, polynomial_dim

from koszulcalc.algebra import (RelationSpace, build_algebra, exterior_preset,
                                preprojective_preset, symmetric_preset)
from koszulcalc.complex import KoszulComplex, check_koszulness
from koszulcalc.fields import GF, QQ


@pytest.fixture(scope="module")
def complex_kxy(kxy):
    return KoszulComplex(kxy)


class TestSliceBases:
    def test_counting_oracle_weight_two(self, complex_kxy, kxy):
        # triples alpha (x) w (x) beta with total weight 2, by brute count
        def count(p):
            total = 0
            wdim = [1, 2, 1][p]
            for r in range(2 - p + 1):
                s = 2 - p - r
                total += polynomial_dim(2, r) * wdim * polynomial_dim(2, s)
            return total

        assert [complex_kxy.dim(p, 2) for p in range(3)] == \
            [count(p) for p in range(3)] == [10, 8, 1]

    def test_block_compatibility_of_d(self, preproj_a3):
        K = KoszulComplex(preproj_a3)
        # the boundary preserves the outer (target, source) blocks
        def outer_block(p, w, lab):
            r, ia, iw, ib = lab
            s = w - p - r
            return (preproj_a3.block(r, ia)[0], preproj_a3.block(s, ib)[1])

        for p in (1, 2):
            for w in range(p, 6):
                src = K.basis(p, w)
                dst = K.basis(p - 1, w)
                m = K.d_matrix(p, w)
                for col, lab in enumerate(src):
                    bl = outer_block(p, w, lab)
                    for i, row in enumerate(m.rows):
                        if col in row:
                            assert outer_block(p - 1, w, dst[i]) == bl


class TestDifferential:
    def test_squares_to_zero_kxy(self, complex_kxy):
        for w in range(6):
            for p in range(2, complex_kxy.pmax_slice(w) + 1):
                prod = complex_kxy.d_matrix(p - 1, w).matmul(
                    complex_kxy.d_matrix(p, w))
                assert prod.is_zero(), (p, w)

    def test_degree_one_formula(self, complex_kxy):
        # d(1 (x) x (x) 1) = x (x) 1 - 1 (x) x
        i1 = complex_kxy.index(1, 1)
        out = complex_kxy.apply_d(1, 1, {i1[(0, 0, 0, 0)]: F(1)})
        basis0 = complex_kxy.basis(0, 1)
        named = {basis0[i]: c for i, c in out.items()}
        assert named == {(1, 0, 0, 0): F(1), (0, 0, 0, 0): F(-1)}

    def test_weight_preserved(self, complex_kxy):
        # every slice matrix maps into the same-weight slice by shape
        for w in range(1, 6):
            for p in range(1, complex_kxy.pmax_slice(w) + 1):
                m = complex_kxy.d_matrix(p, w)
                assert m.nrows == complex_kxy.dim(p - 1, w)
                assert m.ncols == complex_kxy.dim(p, w)


class TestKoszulness:
    def test_polynomial_exact(self, kxy):
        rep = check_koszulness(kxy, 5)
        assert rep.is_koszul and rep.first_failure() is None

    def test_free_algebra_exact(self):
        q, _ = symmetric_preset(2, QQ)
        A = build_algebra(q, RelationSpace(q, [], QQ), 5)
        assert check_koszulness(A, 5).is_koszul

    def test_exterior_exact(self):
        q, r = exterior_preset(2, QQ)
        assert check_koszulness(build_algebra(q, r, 6), 6).is_koszul

    def test_preprojective_a3_fails(self, preproj_a3):
        rep = check_koszulness(preproj_a3, 8)
        assert not rep.is_koszul
        w, p, d = rep.first_failure()
        assert w <= 8 and d > 0

    def test_dense_oracle_agreement(self, preproj_a3):
        rep = check_koszulness(preproj_a3, 6)
        K = KoszulComplex(preproj_a3)
        for w in range(7):
            for p in range(0, K.pmax_slice(w) + 1):
                d_out = K.d_matrix(p, w) if p else K.augmentation(w)
                d_in = K.d_matrix(p + 1, w)
                assert rep.tables[w][p] == homology_dim(d_in, d_out), (p, w)

    def test_gf5_and_gf2(self):
        for field in (GF(5), GF(2)):
            q, r = symmetric_preset(2, field)
            assert check_koszulness(build_algebra(q, r, 4), 4).is_koszul
            qp, rp = preprojective_preset([("1", "2"), ("2", "3")], field)
            assert not check_koszulness(build_algebra(qp, rp, 6), 6).is_koszul
