"""Tests for the integer-matrix realization of the extended Weyl group.

Chevalley generator matrices, the projection onto signed permutations,
the distinguished twist elements and their relations, and the lifted
relative-Weyl subgroups V_d^I are all checked against hand-computed
matrices and against brute-force closures at small rank.
"""

import itertools

import pytest

from dsplitlevi.extweyl import (
    IntMatrix,
    build_twist_elements,
    build_VdI,
    chevalley_generator,
    matrix_closure,
    rho,
)
from dsplitlevi.levi import (
    LeviLabel,
    enumerate_labels,
    relative_weyl,
    sylow_twist_w,
)
from dsplitlevi.rootsys import build_root_system
from dsplitlevi.signedperm import SignedPerm, group_closure, tau, wprime


def sp(text, n):
    return SignedPerm.from_cycles(text, n)


def mat(*rows):
    return IntMatrix(tuple(tuple(r) for r in rows))


class TestIntMatrix:
    def test_identity(self):
        assert IntMatrix.identity(2) == mat((1, 0), (0, 1))

    def test_mul_is_composition(self):
        a = mat((0, 1), (-1, 0))
        assert a * IntMatrix.identity(2) == a
        assert a * a == mat((-1, 0), (0, -1))

    def test_inverse_of_signed_monomial(self):
        a = mat((0, 1), (-1, 0))
        assert a.inv() * a == IntMatrix.identity(2)
        assert a * a.inv() == IntMatrix.identity(2)

    def test_inverse_requires_monomial(self):
        with pytest.raises(ValueError):
            mat((1, 1), (0, 1)).inv()

    def test_pow(self):
        a = mat((0, 1), (-1, 0))
        assert a ** 0 == IntMatrix.identity(2)
        assert a ** 4 == IntMatrix.identity(2)
        assert a ** -1 == a.inv()

    def test_conj_convention(self):
        # x^g = g^-1 x g, matching the signed permutation convention.
        g = chevalley_generator("n", (1, -1), 1)
        x = chevalley_generator("n", (2, 0), 1)
        assert rho(x.conj(g)) == rho(x).conj(rho(g))

    def test_symplectic_check(self):
        assert IntMatrix.identity(4).is_symplectic()
        assert mat((0, 1), (-1, 0)).is_symplectic()
        assert not mat((1, 0), (0, -1)).is_symplectic()


class TestChevalleyGenerators:
    def test_rank_one_n_matrix(self):
        n1 = chevalley_generator("n", (2,), 1)
        assert n1 == mat((0, 1), (-1, 0))
        assert n1 * n1 == mat((-1, 0), (0, -1))
        assert n1 * n1 == chevalley_generator("h", (2,), -1)

    def test_x_matrices_frozen(self):
        assert chevalley_generator("x", (1, -1), 1) == mat(
            (1, 1, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, -1, 1))
        assert chevalley_generator("x", (1, 1), 1) == mat(
            (1, 0, 0, 1), (0, 1, 1, 0), (0, 0, 1, 0), (0, 0, 0, 1))
        assert chevalley_generator("x", (2, 0), 1) == mat(
            (1, 0, 1, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
        assert chevalley_generator("x", (0, -2), 1) == mat(
            (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 1, 0, 1))
        assert chevalley_generator("x", (-1, -1), 1) == mat(
            (1, 0, 0, 0), (0, 1, 0, 0), (0, 1, 1, 0), (1, 0, 0, 1))

    def test_h_involution(self):
        for n in (2, 3):
            system = build_root_system("C", n)
            for root in system.roots:
                h = chevalley_generator("h", root, -1)
                assert h * h == IntMatrix.identity(2 * n)

    def test_symplectic_everywhere(self):
        system = build_root_system("C", 2)
        for root in system.roots:
            for kind in ("x", "n", "h"):
                for t in (1, -1):
                    assert chevalley_generator(kind, root, t).is_symplectic()

    def test_h_group_order(self):
        for n in (2, 3, 4):
            system = build_root_system("C", n)
            gens = [chevalley_generator("h", r, -1) for r in system.roots]
            assert len(matrix_closure(gens)) == 2 ** n

    def test_bad_root_rejected(self):
        for bad in ((0, 0), (1, 1, 1), (2, 1), (3, 0)):
            with pytest.raises(ValueError):
                chevalley_generator("x", bad, 1)

    def test_bad_t_rejected(self):
        with pytest.raises(ValueError):
            chevalley_generator("x", (2, 0), 2)

    def test_bad_kind_rejected(self):
        with pytest.raises(ValueError):
            chevalley_generator("y", (2, 0), 1)


class TestRho:
    def test_identity(self):
        assert rho(IntMatrix.identity(4)) == SignedPerm.identity(2)

    def test_sign_flip(self):
        assert rho(chevalley_generator("n", (2,), 1)) == sp("(1,-1)", 1)

    def test_transposition(self):
        assert rho(chevalley_generator("n", (1, -1), 1)) == sp("(1,2)(-1,-2)", 2)

    def test_kernel_element(self):
        m = mat((-1, 0, 0, 0), (0, -1, 0, 0), (0, 0, -1, 0), (0, 0, 0, -1))
        assert rho(m) == SignedPerm.identity(2)

    def test_rejects_non_monomial(self):
        with pytest.raises(ValueError):
            rho(chevalley_generator("x", (2, 0), 1))

    def test_homomorphism_on_samples(self):
        system = build_root_system("C", 2)
        mats = [chevalley_generator("n", r, 1) for r in system.roots]
        for a, b in itertools.product(mats, repeat=2):
            assert rho(a * b) == rho(a) * rho(b)


class TestTwistElements:
    def test_n2_d4(self):
        te = build_twist_elements(2, 4)
        assert rho(te.v) == sp("(1,2,-1,-2)", 2)
        assert te.v == te.v0
        assert len(te.c) == 1 and len(te.p) == 0
        assert rho(te.c[0]) == sp("(1,2,-1,-2)", 2)
        assert te.v_prime == te.c[0]
        assert te.c[0] * te.v == te.v * te.c[0]
        assert len(matrix_closure([te.c[0]])) == 8
        assert te.p_pair[(1, 1)] == IntMatrix.identity(4)

    def test_n2_d1(self):
        te = build_twist_elements(2, 1)
        assert rho(te.v) == SignedPerm.identity(2)
        assert len(te.c) == 2 and len(te.p) == 1
        assert te.h[0] == mat(
            (-1, 0, 0, 0), (0, 1, 0, 0), (0, 0, -1, 0), (0, 0, 0, 1))
        assert te.p[0] * te.p[0] == te.h[0] * te.h[1]
        assert rho(te.p[0]) == sp("(1,2)(-1,-2)", 2)
        assert te.c[1] == te.c[0].conj(te.p[0])
        assert rho(te.c[0]) == sp("(1,-1)", 2)
        assert rho(te.c[1]) == sp("(2,-2)", 2)

    def test_n3_d3(self):
        te = build_twist_elements(3, 3)
        assert rho(te.v) == sylow_twist_w(3, 3) == sp("(1,3,-2)(-1,-3,2)", 3)
        assert rho(te.v0) == sp("(1,2,3,-1,-2,-3)", 3)

    def test_n4_d4(self):
        te = build_twist_elements(4, 4)
        assert rho(te.v) == sylow_twist_w(4, 4)
        assert rho(te.c[0]) == wprime((1, 3), 4)
        assert rho(te.c[1]) == wprime((2, 4), 4)
        assert te.c[1] == te.c[0].conj(te.p[0])
        assert rho(te.p[0]) == tau((1, 3), (2, 4), 4)
        assert te.p[0] * te.p[0] == te.h[0] * te.h[1]
        assert te.p_pair[(1, 2)] == te.p[0]
        assert te.p_pair[(1, 1)] == IntMatrix.identity(8)

    def test_degenerate_twist(self):
        te = build_twist_elements(2, 8)
        assert te.v == te.v0 == IntMatrix.identity(4)
        assert te.c == () and te.p == () and te.p_pair == {}
        assert te.v_prime == IntMatrix.identity(4)

    def _extended_weyl_group(self, n, l):
        if l == 0:
            return [IntMatrix.identity(2 * n)]
        gens = []
        for root in build_root_system("C", max(l, 2)).roots:
            if l == 1 and any(root[i] for i in range(1, len(root))):
                continue
            full = tuple(root) + (0,) * (n - len(root))
            gens.append(chevalley_generator("n", full, 1))
        return matrix_closure(gens)

    def test_v_prime_central_in_Vd(self):
        for n, d in itertools.product((2, 3), (1, 2, 3, 4)):
            te = build_twist_elements(n, d)
            l = te.l
            Vl = self._extended_weyl_group(n, l)
            assert len(Vl) == 4 ** l * (1 if l < 2 else
                                        2 if l == 2 else 6)
            Vd = [g for g in Vl if g * te.v == te.v * g]
            for g in Vd:
                assert te.v_prime * g == g * te.v_prime

    def test_rho_Vd_is_centralizer(self):
        for n, d in itertools.product((2, 3), (1, 2, 3, 4)):
            te = build_twist_elements(n, d)
            l = te.l
            if l == 0:
                continue
            Vl = self._extended_weyl_group(n, l)
            Vd = [g for g in Vl if g * te.v == te.v * g]
            w = sylow_twist_w(n, d)
            small = [g for g in group_closure(
                [wprime((i,), n) for i in range(1, l + 1)]
                + ([tau((i,), (i + 1,), n) for i in range(1, l)] or
                   [SignedPerm.identity(n)]))
                if all(g(i) == i for i in range(l + 1, n + 1))]
            cent = {g for g in small if g * w == w * g}
            assert {rho(g) for g in Vd} == cent


class TestBuildVdI:
    def test_single_orbit_example(self):
        label = LeviLabel(2, 4, (), ((1,), (2,)))
        gens, hs = build_VdI(label)
        V = matrix_closure(gens)
        assert len(V) == 8
        image = {rho(m) for m in V}
        rw = relative_weyl(label)
        assert image == set(group_closure(rw.generators))
        H = matrix_closure(hs)
        assert len(H) == 2
        kernel = {m for m in V if rho(m) == SignedPerm.identity(2)}
        assert kernel == set(H)

    def test_two_orbits_example(self):
        label = LeviLabel(2, 1, (), ((1,), (2,)))
        gens, hs = build_VdI(label)
        V = matrix_closure(gens)
        assert len(V) == 32
        H = matrix_closure(hs)
        assert len(H) == 4
        assert len({rho(m) for m in V}) == 8

    def test_empty_blocks(self):
        label = LeviLabel(2, 1, (1, 2), ())
        gens, hs = build_VdI(label)
        assert gens == () and hs == ()

    def test_rank_cap(self):
        label = LeviLabel(5, 1, tuple(range(1, 6)), ())
        with pytest.raises(ValueError):
            build_VdI(label)

    def test_sweep_small_rank(self):
        for n, d in itertools.product((2, 3), (1, 2, 3, 4)):
            te = build_twist_elements(n, d)
            for label in enumerate_labels(n, d):
                gens, hs = build_VdI(label)
                rw = relative_weyl(label)
                if not label.I:
                    assert gens == () and hs == ()
                    continue
                for g in gens:
                    assert g.is_symplectic()
                    assert g * te.v == te.v * g
                V = matrix_closure(gens)
                expected = 1
                for s, ts in label.t.items():
                    expected *= 2 ** ts
                assert len(V) == expected * rw.order
                image = {rho(m) for m in V}
                assert image == set(group_closure(rw.generators))
                H = matrix_closure(hs)
                assert len(H) == expected
                for a in H:
                    assert a * a == IntMatrix.identity(2 * n)
                    for b in H:
                        assert a * b == b * a
                kernel = {m for m in V
                          if rho(m) == SignedPerm.identity(n)}
                assert kernel == set(H)
