"""Oracle tests for d-split Levi labels in type C.

Frozen expectations: the d0 table, small twist elements, exhaustive
label enumerations at rank 2-4 (worked out by hand from the bar-orbit
and sign conditions), textbook group orders (|GL2(3)| = 48,
|Sp4(3)| = 51840, |GU1(9)| = 10), and relative Weyl group shapes.
"""

import itertools

import pytest

from dsplitlevi.cyclo import check_eq1
from dsplitlevi.levi import (
    LeviLabel,
    compute_d0,
    concrete_parabolic_roots,
    enumerate_labels,
    gl_order,
    label_record,
    levi_structure,
    relative_weyl,
    sp_order,
    sylow_twist_w,
    verify_relative_weyl,
)
from dsplitlevi.rootsys import build_root_system, is_stable_under
from dsplitlevi.signedperm import SignedPerm, group_closure

def sp(text, n):
    return SignedPerm.from_cycles(text, n)


class TestD0:
    def test_bcd_table(self):
        assert [compute_d0("BCD", d) for d in range(1, 9)] == [
            1, 1, 3, 2, 5, 3, 7, 4]
        assert compute_d0("BCD", 6) == 3
        assert compute_d0("BCD", 5) == 5

    def test_linear_and_unitary_tables(self):
        assert compute_d0("A", 4) == 4
        assert compute_d0("A", 7) == 7
        assert compute_d0("2A", 3) == 6     # d odd -> 2d
        assert compute_d0("2A", 4) == 4     # 4 | d -> d
        assert compute_d0("2A", 6) == 3     # d = 2 mod 4 -> d/2
        assert compute_d0("2A", 2) == 1

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            compute_d0("B", 3)


class TestSylowTwist:
    def test_rank2_d4(self):
        assert sylow_twist_w(2, 4) == sp("(1,2,-1,-2)", 2)

    def test_rank2_d1_is_identity(self):
        assert sylow_twist_w(2, 1) == SignedPerm.identity(2)

    def test_rank3_d3_is_squared_six_cycle(self):
        w = sylow_twist_w(3, 3)
        assert w == sp("(1,2,3,-1,-2,-3)", 3) ** 2
        assert w == sp("(1,3,-2)", 3)

    def test_rank4_d4_is_grid_product(self):
        assert sylow_twist_w(4, 4) == sp("(1,3,-1,-3)(2,4,-2,-4)", 4)

    def test_rank4_d2_is_all_flips(self):
        assert sylow_twist_w(4, 2) == sp("(1,-1)(2,-2)(3,-3)(4,-4)", 4)

    def test_identity_outside_support(self):
        w = sylow_twist_w(5, 4)     # d0=2, l=4: point 5 untouched
        assert w(5) == 5
        assert w == sp("(1,3,-1,-3)(2,4,-2,-4)", 5)

    def test_rank_too_small_gives_identity(self):
        assert sylow_twist_w(2, 8) == SignedPerm.identity(2)

    def test_order_divides_d(self):
        for n in range(2, 6):
            for d in range(1, 10):
                assert d % sylow_twist_w(n, d).order() == 0, (n, d)


class TestEnumerate:
    def test_rank2_d4(self):
        labels = {(lab.I_minus1, lab.I) for lab in enumerate_labels(2, 4)}
        assert labels == {((1, 2), ()), ((), ((1,), (2,)))}

    def test_rank2_d1(self):
        labels = {(lab.I_minus1, lab.I) for lab in enumerate_labels(2, 1)}
        assert labels == {
            ((), ((1,), (2,))), ((1,), ((2,),)), ((2,), ((1,),)),
            ((1, 2), ()), ((), ((1, 2),))}

    def test_rank2_d8(self):
        labels = {(lab.I_minus1, lab.I) for lab in enumerate_labels(2, 8)}
        assert labels == {((1, 2), ())}

    def test_rank3_d3(self):
        labels = {(lab.I_minus1, lab.I) for lab in enumerate_labels(3, 3)}
        assert labels == {((1, 2, 3), ()), ((), ((1,), (2,), (3,)))}

    def test_rank4_d4(self):
        labels = {(lab.I_minus1, lab.I) for lab in enumerate_labels(4, 4)}
        assert labels == {
            ((1, 2, 3, 4), ()),
            ((1, 3), ((2,), (4,))),
            ((2, 4), ((1,), (3,))),
            ((), ((1,), (2,), (3,), (4,))),
            ((), ((1, 2), (3, 4))),
        }

    def test_deterministic_order(self):
        a = [(lab.I_minus1, lab.I) for lab in enumerate_labels(4, 4)]
        b = [(lab.I_minus1, lab.I) for lab in enumerate_labels(4, 4)]
        assert a == b
        assert a == sorted(a)

    def test_dedup_by_signature(self):
        assert len(enumerate_labels(2, 1)) == 5
        assert len(enumerate_labels(2, 1, dedup=True)) == 4

    def test_invalid_labels_rejected(self):
        with pytest.raises(ValueError):
            LeviLabel(2, 4, (1,), ((2,),))      # I_minus1 not bar-stable
        with pytest.raises(ValueError):
            LeviLabel(2, 4, (), ((1, 2),))      # orbit length 1, need 2
        with pytest.raises(ValueError):
            LeviLabel(2, 1, (1,), ((1,),))      # overlap
        with pytest.raises(ValueError):
            LeviLabel(2, 1, (), ((1,),))        # complement not covered

    def test_derived_data_rank4_d4(self):
        lab = LeviLabel(4, 4, (), ((1, 2), (3, 4)))
        assert lab.d0 == 2 and lab.l == 4 and lab.a == 2
        assert lab.t == {2: 1}
        (orbit,) = lab.orbits[2]
        assert orbit.J_O == (1, 2)
        assert orbit.Q == ((1, 3), (2, 4))

    @pytest.mark.parametrize("n", [2, 3])
    def test_completeness_against_eq1(self, n):
        # Both directions of the classification: a stable concrete pair
        # is enumerated exactly when the eigenspace test passes.
        sys = build_root_system("C", n)
        for d in range(1, 9):
            w = sylow_twist_w(n, d)
            enumerated = {(lab.I_minus1, lab.I)
                          for lab in enumerate_labels(n, d)}
            for pair in _all_concrete_pairs(n):
                S, P = pair
                roots = concrete_parabolic_roots(n, S, P)
                if not is_stable_under(roots, w):
                    assert pair not in enumerated, (d, pair)
                    continue
                assert check_eq1(w, d, roots, sys) == (pair in enumerated), (
                    d, pair)


def _all_concrete_pairs(n):
    points = tuple(range(1, n + 1))
    out = []
    for k in range(n + 1):
        for S in itertools.combinations(points, k):
            rest = tuple(p for p in points if p not in S)
            for P in _partitions_of(rest):
                out.append((S, P))
    return out


def _partitions_of(points):
    if not points:
        return [()]
    first, rest = points[0], points[1:]
    out = []
    for k in range(len(rest) + 1):
        for tail in itertools.combinations(rest, k):
            block = (first,) + tail
            remaining = tuple(p for p in rest if p not in tail)
            for sub in _partitions_of(remaining):
                out.append(tuple(sorted((block,) + sub, key=min)))
    return out


class TestStructure:
    def test_gu1_factor(self):
        lab = LeviLabel(2, 4, (), ((1,), (2,)))
        s = levi_structure(lab, 3)
        assert s.sp_rank == 0
        assert s.gl_parts == ((1, 1),)
        assert s.epsilon == -1
        assert s.order == 10            # |GU1(9)| = 9 + 1

    def test_gl2_factor(self):
        lab = LeviLabel(2, 1, (), ((1, 2),))
        s = levi_structure(lab, 3)
        assert s.epsilon == 1
        assert s.order == 48            # |GL2(3)| = 3·2·8

    def test_pure_symplectic(self):
        lab = LeviLabel(2, 4, (1, 2), ())
        s = levi_structure(lab, 3)
        assert s.gl_parts == ()
        assert s.order == sp_order(2, 3) == 51840

    def test_sp_orders(self):
        assert sp_order(0, 3) == 1
        assert sp_order(1, 3) == 24      # |SL2(3)|
        assert sp_order(2, 3) == 51840   # |Sp4(3)|
        assert sp_order(3, 3) == 9170703360

    def test_gl_orders(self):
        assert gl_order(1, 9, -1) == 10
        assert gl_order(1, 9, 1) == 8
        assert gl_order(2, 3, 1) == 48
        assert gl_order(2, 3, -1) == 96      # |GU2(3)| = 3·(3+1)(9-1)
        assert gl_order(3, 2, -1) == 648     # |GU3(2)| = 8·3·3·9

    def test_q_validation(self):
        lab = LeviLabel(2, 4, (1, 2), ())
        with pytest.raises(ValueError):
            levi_structure(lab, 4)       # even
        with pytest.raises(ValueError):
            levi_structure(lab, 15)      # not a prime power
        assert levi_structure(lab, 9).order == sp_order(2, 9)

    def test_product_label(self):
        # n=4, d=4, I_minus1={1,3}: Sp4(q) x GU1(q^2)^2
        lab = LeviLabel(4, 4, (1, 3), ((2,), (4,)))
        s = levi_structure(lab, 3)
        assert s.sp_rank == 2
        assert s.gl_parts == ((1, 1),)
        assert s.t == {1: 1}
        assert s.order == 51840 * 10


class TestRelativeWeyl:
    def test_rank2_d4_singletons(self):
        lab = LeviLabel(2, 4, (), ((1,), (2,)))
        rw = relative_weyl(lab)
        assert rw.factors == ((4, 1),)
        assert rw.order == 4
        assert rw.generators == (sp("(1,2,-1,-2)", 2),)
        assert len(group_closure(rw.generators)) == 4

    def test_rank4_d4_singletons(self):
        lab = LeviLabel(4, 4, (), ((1,), (2,), (3,), (4,)))
        rw = relative_weyl(lab)
        assert rw.factors == ((4, 2),)
        assert rw.order == 32
        assert len(group_closure(rw.generators)) == 32

    def test_trivial_for_empty_I(self):
        lab = LeviLabel(2, 1, (1, 2), ())
        rw = relative_weyl(lab)
        assert rw.factors == ()
        assert rw.order == 1
        assert rw.generators == ()

    def test_two_block_sizes(self):
        # n=4, d=1: I = {{1,2},{3},{4}}: C2wrS1 x C2wrS2
        lab = LeviLabel(4, 1, (), ((1, 2), (3,), (4,)))
        rw = relative_weyl(lab)
        assert sorted(rw.factors) == [(2, 1), (2, 2)]
        assert rw.order == 2 * 8
        assert len(group_closure(rw.generators)) == 16

    @pytest.mark.parametrize("n", [2, 3])
    def test_generators_centralize_w_and_close_correctly(self, n):
        for d in range(1, 9):
            w = sylow_twist_w(n, d)
            for lab in enumerate_labels(n, d):
                rw = relative_weyl(lab)
                for g in rw.generators:
                    assert g * w == w * g, (n, d, lab)
                if rw.generators:
                    assert len(group_closure(rw.generators)) == rw.order


class TestVerify:
    def test_rank2_d4(self):
        assert verify_relative_weyl(LeviLabel(2, 4, (), ((1,), (2,))))

    def test_rank2_d1(self):
        assert verify_relative_weyl(LeviLabel(2, 1, (), ((1,), (2,))))

    def test_rank3_d2(self):
        assert verify_relative_weyl(LeviLabel(3, 2, (), ((1,), (2,), (3,))))

    @pytest.mark.parametrize("n", [2, 3])
    def test_all_labels_verify(self, n):
        for d in (1, 2, 3, 4, 6, 8):
            for lab in enumerate_labels(n, d):
                assert verify_relative_weyl(lab), (n, d, lab)

    def test_rank_cap(self):
        with pytest.raises(ValueError):
            verify_relative_weyl(LeviLabel(5, 1, tuple(range(1, 6)), ()))


class TestRecord:
    def test_json_record(self):
        lab = LeviLabel(2, 4, (), ((1,), (2,)))
        rec = label_record(lab, q=3)
        assert rec == {
            "n": 2, "d": 4, "d0": 2, "epsilon": -1,
            "I_minus1": [], "I": [[1], [2]],
            "t": {"1": 1}, "relative_weyl": [[4, 1]],
            "order": 10,
        }

    def test_record_without_q(self):
        rec = label_record(LeviLabel(2, 4, (1, 2), ()))
        assert rec["order"] is None
        assert rec["I_minus1"] == [1, 2]
