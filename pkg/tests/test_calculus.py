import random
from fractions import Fraction as F
from math import comb

import pytest
from oracles import homology_dim

from koszulcalc.algebra import (EnvelopingBimodule, ShiftedBimodule,
                                build_algebra, exterior_preset,
                                preprojective_preset, symmetric_preset)
from koszulcalc.calculus import (Calculus, Chain, HKClass, PairingUnsupported,
                                 cap_classes, cup_classes)
from koszulcalc.complex import KoszulComplex
from koszulcalc.fields import GF, QQ


class TestDifferentials:
    def test_degree_zero_commutator(self, preproj_calc):
        # b(a)(x) = a x - x a for a 0-cochain a
        calc = preproj_calc
        A = calc.A
        f = calc.zero_cochain(0, 0)
        f.cols[0][0] = F(1)  # the idempotent e_1
        bf = calc.b_cochain(f)
        for a in range(calc.W.dim(1)):
            arrow = {a: F(1)}
            lhs = bf.cols[a]
            e1 = {0: F(1)}
            rhs = {}
            from koszulcalc.linalg import vec_add_scaled

            vec_add_scaled(QQ, rhs, F(1), A.multiply(0, e1, 1, arrow))
            vec_add_scaled(QQ, rhs, F(-1), A.multiply(1, arrow, 0, e1))
            assert lhs == rhs

    def test_symmetric_vanishing(self, kxy_calc):
        calc = kxy_calc
        rng = random.Random(8)
        shifted = ShiftedBimodule(calc.regular, 1)
        for M in (calc.regular, shifted):
            for p in range(0, 3):
                for w in range(M.wmin, M.wmax):
                    assert calc.b_cochain(
                        calc.random_cochain(rng, p, w, M)).is_zero()
                    if p >= 1:
                        assert calc.b_chain(
                            calc.random_chain(rng, p, w, M)).is_zero()

    def test_squares_vanish_preprojective(self, preproj_calc):
        calc = preproj_calc
        rng = random.Random(9)
        count = 0
        for _ in range(50):
            p = rng.choice([0, 1, 2])
            w = rng.choice(range(0, 4))
            f = calc.random_cochain(rng, p, w)
            assert calc.b_cochain(calc.b_cochain(f)).is_zero()
            if p >= 1:
                z = calc.random_chain(rng, p, w)
                assert calc.b_chain(calc.b_chain(z)).is_zero()
            count += 1
        assert count == 50

    def test_chain_formula_degree_one(self, preproj_calc):
        # b(m (x) x) = m x - x m against the bimodule actions
        calc = preproj_calc
        M = calc.regular
        for im in range(M.dim(1)):
            i, j = M.block(1, im)
            for iw in range(calc.W.dim(1)):
                if calc.W.block(1, iw) != (j, i):
                    continue
                z = Chain(1, 1, M, {(im, iw): F(1)})
                bz = calc.b_chain(z)
                arrow = {iw: F(1)}
                expect = {}
                from koszulcalc.linalg import vec_add_scaled

                mx = M.act_right(1, {im: F(1)}, 1, arrow)
                xm = M.act_left(1, arrow, 1, {im: F(1)})
                acc = dict(mx)
                vec_add_scaled(QQ, acc, F(-1), xm)
                got = {}
                for (m2, iw0), c in bz.coords.items():
                    assert calc.W.block(0, iw0)[0] == M.block(2, m2)[1]
                    got[m2] = got.get(m2, F(0)) + c
                got = {k: v for k, v in got.items() if v}
                assert got == acc

    def test_fundamental_formula_random(self, preproj_calc):
        calc = preproj_calc
        rng = random.Random(10)
        e = calc.fundamental_cocycle()
        for _ in range(40):
            p = rng.choice([0, 1])
            w = rng.choice(range(0, 4))
            f = calc.random_cochain(rng, p, w)
            sign = QQ.one if p % 2 == 0 else QQ.neg(QQ.one)
            rhs = calc.cup(e, f).scaled(F(-1)).add(calc.cup(f, e).scaled(sign))
            assert calc.b_cochain(f) == rhs


class TestCupCap:
    def test_unit_cochain(self, preproj_calc):
        calc = preproj_calc
        rng = random.Random(11)
        one = calc.unit_cochain()
        for _ in range(12):
            p = rng.choice([0, 1, 2])
            w = rng.choice(range(0, 4))
            f = calc.random_cochain(rng, p, w)
            assert calc.cup(one, f) == f
            assert calc.cup(f, one) == f
            z = calc.random_chain(rng, p, w)
            assert calc.cap_left(one, z) == z
            assert calc.cap_right(z, one) == z

    def test_zero_cochain_cup_is_scalar_action(self, kxy_calc):
        calc = kxy_calc
        rng = random.Random(12)
        a = calc.zero_cochain(0, 1)
        a.cols[0][0] = F(2)  # the element 2x
        f = calc.random_cochain(rng, 1, 2)
        g = calc.cup(a, f)
        for k in range(calc.W.dim(1)):
            expect = calc.regular.act_left(1, {0: F(2)}, 2, f.cols[k])
            assert g.cols[k] == expect

    def test_zero_cochain_cap(self, kxy_calc):
        # a n z = (a m) (x) w
        calc = kxy_calc
        rng = random.Random(13)
        a = calc.zero_cochain(0, 1)
        a.cols[0][1] = F(1)  # the element y
        z = calc.random_chain(rng, 2, 2)
        got = calc.cap_left(a, z)
        expect = {}
        from koszulcalc.linalg import vec_add_scaled

        for (im, iw), c in z.coords.items():
            am = calc.regular.act_left(1, {1: F(1)}, 2, {im: F(1)})
            for m2, c2 in am.items():
                vec_add_scaled(QQ, expect, c * c2, {(m2, iw): F(1)})
        assert got.coords == expect

    def test_fundamental_cocycle_squares_to_zero(self, kxy_calc):
        # e u e evaluated on x^y is the image of the commutation relation
        calc = kxy_calc
        e = calc.fundamental_cocycle()
        assert calc.cup(e, e).is_zero()

    def test_cap_on_complex_differs_from_scalar_action(self, kxy_calc):
        # f n (1 (x) e (x) 1) = 1 (x) e (x) a  !=  a (x) e (x) 1 = a z
        calc = kxy_calc
        K = KoszulComplex(calc.A, calc.W)
        a = calc.zero_cochain(0, 1)
        a.cols[0][0] = F(1)  # the generator x
        i0 = K.index(0, 0)
        z = {i0[(0, 0, 0, 0)]: F(1)}
        _, w1, left = calc.cap_left_K(K, a, 0, 0, z)
        basis = K.basis(0, 1)
        named = {basis[i]: c for i, c in left.items()}
        assert named == {(0, 0, 0, 0): F(1)}  # 1 (x) e (x) x
        # whereas the outer action puts x on the left slot
        from koszulcalc.duality import _k_outer_act

        _, _, az = _k_outer_act(calc, K, 0, 0, z, 1, {0: F(1)}, 0, calc.A.unit())
        named_az = {basis[i]: c for i, c in az.items()}
        assert named_az == {(1, 0, 0, 0): F(1)}
        assert named != named_az

    def test_pairing_needs_regular_side(self, kxy_calc):
        calc = kxy_calc
        M = ShiftedBimodule(calc.regular, 1)
        f = calc.zero_cochain(0, 1, M)
        g = calc.zero_cochain(0, 1, M)
        with pytest.raises(PairingUnsupported):
            calc.cup(f, g)


class TestMixedAssociativity:
    def test_cap_cup_relations(self, preproj_calc):
        # (z n f) n g = z n (f u g) and f n (g n z) = (f u g) n z
        calc = preproj_calc
        rng = random.Random(14)
        done = 0
        while done < 25:
            q = rng.choice([1, 2])
            w = rng.choice(range(0, 3))
            pf = rng.choice([0, 1])
            pg = rng.choice([0, 1])
            wf = rng.choice(range(0, 2))
            wg = rng.choice(range(0, 2))
            if w + wf + wg > calc.A.T:
                continue
            z = calc.random_chain(rng, q, w)
            f = calc.random_cochain(rng, pf, wf)
            g = calc.random_cochain(rng, pg, wg)
            lhs = calc.cap_right(calc.cap_right(z, f), g)
            rhs = calc.cap_right(z, calc.cup(f, g))
            assert lhs == rhs
            lhs2 = calc.cap_left(f, calc.cap_left(g, z))
            rhs2 = calc.cap_left(calc.cup(f, g), z)
            assert lhs2 == rhs2
            lhs3 = calc.cap_left(f, calc.cap_right(z, g))
            rhs3 = calc.cap_right(calc.cap_left(f, z), g)
            assert lhs3 == rhs3
            done += 1


class TestHKTables:
    def test_polynomial_homology_counting(self, kxy_calc):
        hom = kxy_calc.hk(direction="homology")
        n = 2
        for t in range(0, 6):
            for p in range(0, 3):
                if p > t:
                    continue
                expect = comb(n, p) * comb(n + (t - p) - 1, n - 1)
                assert hom.dim(p, t) == expect

    def test_kx_cohomology_towers(self):
        q, r = symmetric_preset(1, QQ)
        A = build_algebra(q, r, 4, preset=("symmetric", 1))
        calc = Calculus(A)
        coh = calc.hk(direction="cohomology")
        for t in range(0, 4):
            assert coh.dim(0, t) == 1
            assert coh.dim(1, t) == 1

    def test_truncation_independence(self):
        # recomputing with T+1 gives identical dims on untruncated slices
        dims = {}
        for T in (4, 5):
            q, r = symmetric_preset(2, QQ)
            A = build_algebra(q, r, T, preset=("symmetric", 2))
            calc = Calculus(A)
            coh = calc.hk(direction="cohomology")
            dims[T] = {(p, t): s.dim for (p, t), s in coh.slices.items()
                       if not s.edge}
        for key, d in dims[4].items():
            assert dims[5].get(key) == d

    def test_enveloping_concentration(self, kxy_calc):
        Ae = EnvelopingBimodule(kxy_calc.A)
        table = kxy_calc.hk(module=Ae, direction="cohomology")
        for t in range(0, kxy_calc.A.T - 2 + 1):
            assert table.dim(0, t) == 0
            assert table.dim(1, t) == 0
            assert table.dim(2, t) == kxy_calc.A.dim(t + 2)

    def test_oracle_dims_preprojective(self, preproj_calc):
        # cross-check a nontrivial cohomology table against dense ranks
        calc = preproj_calc
        coh = calc.hk(direction="cohomology")
        for (p, t), s in coh.slices.items():
            if s.edge or p > 1:
                continue
            # rebuild the two differentials around the slice and compare
            src = coh._space(p, t + p)
            out_m = coh._diff_matrix(p, t, s.pairs, s.index,
                                     {lab: i for i, lab in
                                      enumerate(coh._space(p + 1, t + p + 1))})
            prev_pairs = coh._space(p - 1, t + p - 1)
            if prev_pairs:
                in_m = coh._diff_matrix(p - 1, t, prev_pairs,
                                        {lab: i for i, lab in enumerate(prev_pairs)},
                                        s.index)
            else:
                from koszulcalc.linalg import Matrix

                in_m = Matrix.zero(len(s.pairs), 0, QQ)
            assert s.dim == homology_dim(in_m, out_m), (p, t)


class TestClasses:
    def test_unit_class_acts_as_identity(self, preproj_calc):
        calc = preproj_calc
        coh = calc.hk(direction="cohomology")
        unit = coh.class_of_cochain(calc.unit_cochain())
        assert not unit.is_zero()
        for (p, t), s in sorted(coh.slices.items()):
            if s.edge or not s.dim or t > 3:
                continue
            for i in range(s.dim):
                cls = HKClass(coh, p, t, {i: QQ.one})
                assert cup_classes(unit, cls, coh) == cls
                assert cup_classes(cls, unit, coh) == cls

    def test_products_well_defined(self, preproj_calc):
        # perturbing a representative by a coboundary keeps the product class
        calc = preproj_calc
        coh = calc.hk(direction="cohomology")
        rng = random.Random(15)
        pmax = calc.W.top_nonzero()
        checked = 0
        for (p, t), s in sorted(coh.slices.items()):
            if s.edge or not s.dim or p < 1 or t > 3:
                continue
            cls = HKClass(coh, p, t, {0: QQ.one})
            rep = coh.representative(cls)
            if rep.w < 1:
                continue
            g = calc.random_cochain(rng, p - 1, rep.w - 1)
            perturbed = rep.add(calc.b_cochain(g))
            assert coh.class_of_cochain(perturbed) == cls
            for (q2, t2), s2 in sorted(coh.slices.items()):
                if s2.edge or not s2.dim:
                    continue
                if p + q2 > pmax or rep.w + t2 + q2 > calc.A.T:
                    continue
                beta = coh.representative(HKClass(coh, q2, t2, {0: QQ.one}))
                lhs = coh.class_of_cochain(calc.cup(perturbed, beta))
                rhs = coh.class_of_cochain(calc.cup(rep, beta))
                assert lhs == rhs
                checked += 1
        assert checked

    def test_class_products_associative(self, preproj_calc):
        calc = preproj_calc
        coh = calc.hk(direction="cohomology")
        rng = random.Random(16)
        slots = [(p, t) for (p, t), s in coh.slices.items()
                 if not s.edge and s.dim and t <= 2]
        done = 0
        for _ in range(60):
            (p1, t1), (p2, t2), (p3, t3) = (slots[rng.randrange(len(slots))]
                                            for _ in range(3))
            if p1 + p2 + p3 > calc.W.top_nonzero() or t1 + t2 + t3 > 4:
                continue
            s1, s2, s3 = (coh.slices[k] for k in ((p1, t1), (p2, t2), (p3, t3)))
            a = HKClass(coh, p1, t1, {rng.randrange(s1.dim): QQ.one})
            b = HKClass(coh, p2, t2, {rng.randrange(s2.dim): QQ.one})
            c = HKClass(coh, p3, t3, {rng.randrange(s3.dim): QQ.one})
            lhs = cup_classes(cup_classes(a, b, coh), c, coh)
            rhs = cup_classes(a, cup_classes(b, c, coh), coh)
            assert lhs == rhs
            done += 1
        assert done

    def test_cap_action_on_classes(self, preproj_calc):
        # (z n f) n g = z n (f u g) at class level
        calc = preproj_calc
        coh = calc.hk(direction="cohomology")
        hom = calc.hk(direction="homology")
        rng = random.Random(17)
        zslots = [(p, t) for (p, t), s in hom.slices.items()
                  if s.dim and 1 <= p and t <= 4]
        fslots = [(p, t) for (p, t), s in coh.slices.items()
                  if not s.edge and s.dim and t <= 2]
        done = 0
        for _ in range(60):
            zp, zt = zslots[rng.randrange(len(zslots))]
            fp, ft = fslots[rng.randrange(len(fslots))]
            gp, gt = fslots[rng.randrange(len(fslots))]
            if fp + gp > zp or zt + ft + gt > 5:
                continue
            z = HKClass(hom, zp, zt, {rng.randrange(hom.slices[(zp, zt)].dim): QQ.one})
            f = HKClass(coh, fp, ft, {rng.randrange(coh.slices[(fp, ft)].dim): QQ.one})
            g = HKClass(coh, gp, gt, {rng.randrange(coh.slices[(gp, gt)].dim): QQ.one})
            lhs = cap_classes(cap_classes(z, f, "right", hom), g, "right", hom)
            rhs = cap_classes(z, cup_classes(f, g, coh), "right", hom)
            assert lhs == rhs
            done += 1
        assert done


class TestHigher:
    def test_kx_oracle(self):
        # brute: multiplication by x on each tower; cohomology survives
        # only at (p, t) = (1, -1), homology only at (0, 0)
        q, r = symmetric_preset(1, QQ)
        A = build_algebra(q, r, 4, preset=("symmetric", 1))
        calc = Calculus(A)
        hch = calc.higher(calc.hk(direction="cohomology"))
        assert hch.dims.get((1, -1)) == 1
        assert hch.total(1) == 1 and hch.total(0) == 0
        hhh = calc.higher(calc.hk(direction="homology"))
        assert hhh.dims.get((0, 0)) == 1
        assert hhh.total(0) == 1 and hhh.total(1) == 0

    def test_preprojective_runs_clean(self, preproj_calc):
        calc = preproj_calc
        hch = calc.higher(calc.hk(direction="cohomology"))
        assert all(d >= 0 for d in hch.dims.values())

    def test_gf2_square_zero_or_diagnostic(self):
        from koszulcalc.calculus import SquareNotZero

        q, r = symmetric_preset(2, GF(2))
        A = build_algebra(q, r, 4, preset=("symmetric", 2))
        calc = Calculus(A)
        try:
            calc.higher(calc.hk(direction="cohomology"))
        except SquareNotZero as exc:
            assert "d.d" in str(exc)
