import math

import pytest

from quadfold import (
    BranchId,
    ClassTag,
    DegenerateVertex,
    InvalidSectorAngles,
    OutOfDomain,
    Vertex4,
    WrongClass,
    classify,
    fold_interval,
    loop_closure_residual,
    monotonicity_check,
    normalize_angle,
    solve_at_crease,
    solve_flatfoldable,
    solve_generic,
    solve_on_branch,
    solve_straightline,
    xi_of,
)
from conftest import random_generic_vertex

deg = math.radians

GEN = Vertex4.from_degrees((80, 95, 75, 110))
SL = Vertex4.from_degrees((70, 80, 100, 110))
FF = Vertex4.from_degrees((60, 70, 120, 110))


class TestVertex4:
    def test_rejects_wrong_count(self):
        with pytest.raises(InvalidSectorAngles):
            Vertex4((1.0, 1.0, 1.0))

    def test_rejects_nonpositive(self):
        with pytest.raises(InvalidSectorAngles):
            Vertex4((0.0, 2.0, 2.0, 2 * math.pi - 4.0))

    def test_rejects_nondevelopable(self):
        with pytest.raises(InvalidSectorAngles):
            Vertex4.from_degrees((90, 90, 90, 100))

    def test_reflex_sector_allowed(self):
        v = Vertex4.from_degrees((200, 50, 60, 50))
        assert classify(v).tag is ClassTag.TRIVIAL

    def test_shift_and_mirror(self):
        assert GEN.shifted(1).degrees == pytest.approx((95, 75, 110, 80))
        assert GEN.mirrored().degrees == pytest.approx((110, 75, 95, 80))


class TestClassify:
    def test_square_is_double_collinear(self):
        cls = classify(Vertex4.from_degrees((90, 90, 90, 90)))
        assert cls.tag is ClassTag.DOUBLE_COLLINEAR
        assert cls.collinear_pairs == ((1, 3), (2, 4))

    def test_straight_line_canonical(self):
        cls = classify(SL)
        assert cls.tag is ClassTag.STRAIGHT_LINE
        assert cls.collinear_pairs == ((1, 3),)
        assert not cls.flat_foldable

    def test_straight_line_other_pair(self):
        cls = classify(Vertex4.from_degrees((95, 85, 75, 105)))
        assert cls.tag is ClassTag.STRAIGHT_LINE
        assert cls.collinear_pairs == ((2, 4),)

    def test_generic_not_flat_foldable(self):
        cls = classify(GEN)
        assert cls.tag is ClassTag.GENERIC
        assert not cls.flat_foldable
        assert cls.collinear_pairs == ()

    def test_flat_foldable_flag_on_generic(self):
        cls = classify(FF)
        assert cls.tag is ClassTag.GENERIC
        assert cls.flat_foldable

    def test_adjacent_collinear(self):
        cls = classify(Vertex4.from_degrees((50, 180, 60, 70)))
        assert cls.tag is ClassTag.ADJACENT_COLLINEAR
        assert cls.collinear_pairs == ((1, 2),)

    def test_near_degenerate_warns_without_snap(self):
        v = Vertex4.from_degrees((70, 80.000001, 100, 109.999999))
        cls = classify(v)
        assert cls.tag is ClassTag.GENERIC
        assert cls.warnings
        snapped = classify(v, snap=True)
        assert snapped.tag is ClassTag.STRAIGHT_LINE


class TestXi:
    def test_worked_example(self):
        assert math.degrees(xi_of(GEN, deg(60))) == pytest.approx(120.3755, abs=5e-3)

    def test_flat_state(self):
        v = Vertex4.from_degrees((50, 60, 130, 120))
        assert xi_of(v, 0.0) == pytest.approx(deg(110), abs=1e-12)
        w = Vertex4.from_degrees((100, 120, 70, 70))
        # a1 + a2 > pi: xi folds back below pi
        assert xi_of(w, 0.0) == pytest.approx(2 * math.pi - deg(220), abs=1e-12)

    def test_square_at_right_angle(self):
        v = Vertex4.from_degrees((90, 90, 90, 90))
        assert xi_of(v, deg(90)) == pytest.approx(deg(90), abs=1e-12)

    def test_rho_out_of_range(self):
        with pytest.raises(OutOfDomain):
            xi_of(GEN, 4.0)


class TestSolveGeneric:
    def test_worked_example_branch1(self):
        s = solve_generic(GEN, deg(60), BranchId.BRANCH_1)
        assert s.degrees[1] == pytest.approx(-6.006, abs=0.05)
        assert s.degrees[2] == pytest.approx(62.640, abs=0.05)
        assert s.degrees[3] == pytest.approx(6.124, abs=0.05)
        assert loop_closure_residual(GEN, s) < 1e-12

    def test_branch2_closes(self):
        s = solve_generic(GEN, deg(40), BranchId.BRANCH_2)
        assert loop_closure_residual(GEN, s) < 1e-12
        assert s.rho[2] < 0  # opposite crease folds the other way

    def test_origin(self):
        for b in (BranchId.BRANCH_1, BranchId.BRANCH_2):
            s = solve_generic(GEN, 0.0, b)
            assert s.rho == (0.0, 0.0, 0.0, 0.0)

    def test_point_symmetry(self):
        sp = solve_generic(GEN, deg(60), BranchId.BRANCH_1)
        sn = solve_generic(GEN, -deg(60), BranchId.BRANCH_1)
        for a, b in zip(sp.rho, sn.rho):
            assert a == pytest.approx(-b, abs=1e-12)

    def test_wrong_class(self):
        with pytest.raises(WrongClass):
            solve_generic(SL, 0.3, BranchId.BRANCH_1)

    def test_out_of_domain(self):
        hi = fold_interval(GEN, BranchId.BRANCH_1).hi
        with pytest.raises(OutOfDomain):
            solve_generic(GEN, hi + 1e-3, BranchId.BRANCH_1)

    def test_xi_consistency_invariant(self):
        s = solve_generic(GEN, deg(45), BranchId.BRANCH_2)
        a1, a2 = GEN.alpha[0], GEN.alpha[1]
        lhs = math.cos(s.xi)
        rhs = (math.cos(a1) * math.cos(a2)
               - math.sin(a1) * math.sin(a2) * math.cos(s.rho[0]))
        assert lhs == pytest.approx(rhs, abs=1e-9)


class TestSolveStraightline:
    def test_worked_example_curve(self):
        s = solve_straightline(SL, deg(30), BranchId.BRANCH_2)
        assert s.degrees[1] == pytest.approx(-88.998, abs=0.05)
        assert s.degrees[2] == pytest.approx(-30.0, abs=1e-9)
        assert s.degrees[3] == pytest.approx(-94.538, abs=0.05)
        assert loop_closure_residual(SL, s) < 1e-12

    def test_line_segment(self):
        s = solve_straightline(SL, deg(30), BranchId.LINE_SEGMENT_1)
        assert s.degrees == pytest.approx((30, 0, 30, 0), abs=1e-12)

    def test_origin_both_branches(self):
        for b in (BranchId.LINE_SEGMENT_1, BranchId.BRANCH_2):
            assert solve_straightline(SL, 0.0, b).rho == (0.0,) * 4

    def test_raw_values_recorded(self):
        s = solve_straightline(SL, deg(30), BranchId.BRANCH_2)
        # the unnormalized doubled-arccos value differs from rho2 by 2*pi
        assert s.raw_rho[1] - s.rho[1] == pytest.approx(2 * math.pi, abs=1e-9)

    def test_noncanonical_position(self):
        v = Vertex4.from_degrees((95, 85, 75, 105))  # line on creases c2, c4
        s = solve_straightline(v, deg(20), BranchId.BRANCH_2)
        assert loop_closure_residual(v, s) < 1e-12
        # the driving angle lands on the collinear crease c2
        assert s.rho[1] == pytest.approx(deg(20), abs=1e-12)
        seg = solve_straightline(v, deg(20), BranchId.LINE_SEGMENT_1)
        assert seg.rho[1] == pytest.approx(deg(20))
        assert seg.rho[3] == pytest.approx(deg(20))
        assert seg.rho[0] == seg.rho[2] == 0.0

    def test_wrong_class(self):
        with pytest.raises(WrongClass):
            solve_straightline(GEN, 0.3, BranchId.BRANCH_2)

    def test_double_collinear_segments(self):
        sq = Vertex4.from_degrees((90, 90, 90, 90))
        s1 = solve_straightline(sq, deg(40), BranchId.LINE_SEGMENT_1)
        assert s1.degrees == pytest.approx((40, 0, 40, 0), abs=1e-12)
        with pytest.raises(WrongClass):
            solve_straightline(sq, deg(40), BranchId.BRANCH_2)


class TestSolveFlatfoldable:
    def test_worked_example(self):
        s = solve_flatfoldable(FF, deg(90), BranchId.BRANCH_1)
        assert s.degrees[1] == pytest.approx(10.99, abs=0.01)
        assert s.degrees[2] == pytest.approx(90.0, abs=1e-9)
        assert s.degrees[3] == pytest.approx(-10.99, abs=0.01)
        assert loop_closure_residual(FF, s) < 1e-12

    def test_coefficient_value(self):
        # transmission coefficient sin(5 deg) / sin(65 deg)
        s = solve_flatfoldable(FF, deg(90), BranchId.BRANCH_1)
        K = math.tan(s.rho[1] / 2) / math.tan(s.rho[0] / 2)
        assert K == pytest.approx(math.sin(deg(5)) / math.sin(deg(65)), abs=1e-12)

    def test_symmetric_vertex_zero_transmission(self):
        v = Vertex4.from_degrees((65, 65, 115, 115))
        for r1 in (0.3, 1.2, -2.0):
            s = solve_flatfoldable(v, r1, BranchId.BRANCH_1)
            assert s.rho[1] == 0.0 and s.rho[3] == 0.0
            assert s.rho[2] == pytest.approx(r1)

    def test_origin(self):
        for b in (BranchId.BRANCH_1, BranchId.BRANCH_2):
            assert solve_flatfoldable(FF, 0.0, b).rho == (0.0,) * 4

    def test_degenerate_vertex(self):
        with pytest.raises(DegenerateVertex):
            solve_flatfoldable(Vertex4.from_degrees((90, 90, 90, 90)), 0.5,
                               BranchId.BRANCH_1)

    def test_not_flat_foldable(self):
        with pytest.raises(WrongClass):
            solve_flatfoldable(GEN, 0.5, BranchId.BRANCH_1)

    def test_agrees_with_generic_solver(self):
        for r1 in (0.4, 1.1, 2.2, -0.9):
            for b in (BranchId.BRANCH_1, BranchId.BRANCH_2):
                sf = solve_flatfoldable(FF, r1, b)
                sg = solve_generic(FF, r1, b)
                for x, y in zip(sf.rho, sg.rho):
                    assert abs(normalize_angle(x - y)) < 1e-9

    def test_pole_branch2_is_segment(self):
        v = Vertex4.from_degrees((80, 100, 100, 80))  # a1 + a2 = pi
        s = solve_flatfoldable(v, 0.0, BranchId.BRANCH_2)
        assert s.rho == (0.0,) * 4
        with pytest.raises(OutOfDomain):
            solve_flatfoldable(v, 0.5, BranchId.BRANCH_2)


class TestFoldInterval:
    def test_flat_foldable_full(self):
        for b in (BranchId.BRANCH_1, BranchId.BRANCH_2):
            iv = fold_interval(FF, b)
            assert iv.lo == pytest.approx(-math.pi)
            assert iv.hi == pytest.approx(math.pi)

    def test_double_collinear_segment(self):
        iv = fold_interval(Vertex4.from_degrees((90, 90, 90, 90)),
                           BranchId.LINE_SEGMENT_1)
        assert (iv.lo, iv.hi) == pytest.approx((-math.pi, math.pi))

    def test_generic_endpoint_is_argument_boundary(self):
        from quadfold.vertex import _generic_margin, _raw_baseline, _generic_rhos

        iv = fold_interval(GEN, BranchId.BRANCH_1)
        raw0 = _raw_baseline(lambda r: _generic_rhos(GEN.alpha, r,
                                                     BranchId.BRANCH_1))
        m_in = _generic_margin(GEN.alpha, iv.hi, BranchId.BRANCH_1, raw0)
        m_out = _generic_margin(GEN.alpha, iv.hi + 1e-7, BranchId.BRANCH_1, raw0)
        assert m_in >= -1e-12
        assert m_out < 0

    def test_interval_symmetric(self, rng):
        for _ in range(20):
            v = random_generic_vertex(rng)
            iv = fold_interval(v, BranchId.BRANCH_2)
            assert iv.lo == pytest.approx(-iv.hi)
            assert 0 < iv.hi <= math.pi

    def test_solution_valid_across_interval(self, rng):
        # at the exact interval endpoints some arccos argument sits at +-1,
        # where double precision fundamentally costs ~sqrt(eps) in angle
        for _ in range(10):
            v = random_generic_vertex(rng)
            for b in (BranchId.BRANCH_1, BranchId.BRANCH_2):
                iv = fold_interval(v, b)
                for k in range(11):
                    r = iv.lo + (iv.hi - iv.lo) * k / 10
                    s = solve_on_branch(v, r, b)
                    tol = 1e-9 if abs(r) < 0.999 * iv.hi else 1e-6
                    assert loop_closure_residual(v, s) < tol


class TestMonotonicity:
    def test_generic_branches(self):
        for b in (BranchId.BRANCH_1, BranchId.BRANCH_2):
            rep = monotonicity_check(GEN, b, 1000)
            assert rep.passed
            assert min(rep.min_abs_slope) > 0

    def test_flat_foldable(self):
        rep = monotonicity_check(FF, BranchId.BRANCH_1, 1000)
        assert rep.passed

    def test_straightline_curve(self):
        rep = monotonicity_check(SL, BranchId.BRANCH_2, 1000)
        assert rep.passed

    def test_trivial_class_has_no_branch(self):
        v = Vertex4.from_degrees((200, 50, 60, 50))
        with pytest.raises(WrongClass):
            monotonicity_check(v, BranchId.BRANCH_1, 100)

    def test_segment_rejected(self):
        with pytest.raises(WrongClass):
            monotonicity_check(SL, BranchId.LINE_SEGMENT_1, 100)


class TestSolveAtCrease:
    @pytest.mark.parametrize("crease", [1, 2, 3, 4])
    def test_roundtrip_generic(self, crease):
        target = solve_generic(GEN, deg(50), BranchId.BRANCH_1)
        s = solve_at_crease(GEN, crease, target.rho[crease - 1],
                            BranchId.BRANCH_1)
        for a, b in zip(s.rho, target.rho):
            assert a == pytest.approx(b, abs=1e-9)

    @pytest.mark.parametrize("crease", [1, 2, 3, 4])
    def test_roundtrip_flat_foldable(self, crease):
        target = solve_flatfoldable(FF, deg(70), BranchId.BRANCH_2)
        s = solve_at_crease(FF, crease, target.rho[crease - 1],
                            BranchId.BRANCH_2)
        for a, b in zip(s.rho, target.rho):
            assert a == pytest.approx(b, abs=1e-9)

    def test_zero_angle_gives_flat_state(self):
        s = solve_at_crease(GEN, 2, 0.0, BranchId.BRANCH_1)
        assert s.rho == (0.0,) * 4

    def test_zero_transmission_crease_refuses(self):
        v = Vertex4.from_degrees((65, 65, 115, 115))
        with pytest.raises(OutOfDomain):
            solve_at_crease(v, 2, 0.3, BranchId.BRANCH_1)

    def test_unreachable_angle(self):
        with pytest.raises(OutOfDomain):
            solve_at_crease(GEN, 2, math.pi * 0.999, BranchId.BRANCH_1)


def test_class_a_motion_only():
    """An adjacent-collinear vertex folds only along its straight line."""
    v = Vertex4.from_degrees((50, 180, 60, 70))
    s = solve_on_branch(v, deg(35), BranchId.LINE_SEGMENT_1)
    # collinear pair (c1, c2): those two creases fold together, others stay
    assert s.degrees == pytest.approx((35, 35, 0, 0), abs=1e-12)
    assert loop_closure_residual(v, s) < 1e-12
    for b in (BranchId.BRANCH_1, BranchId.BRANCH_2, BranchId.LINE_SEGMENT_2):
        with pytest.raises(WrongClass):
            solve_on_branch(v, 0.1, b)
