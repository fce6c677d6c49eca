import math

import pytest

from quadfold import (
    BranchId,
    EmptyInterval,
    OutOfDomain,
    PropagationConflict,
    Vertex4,
    build_tree,
    certify,
    enumerate_branch_choices,
    mv_assignment,
    propagate,
    stitch,
)
from quadfold.fixtures import (
    showcase_a_plan,
    showcase_b_plan,
    single_ff_unit_plan,
    square_grid_plan,
)

deg = math.radians


@pytest.fixture(scope="module")
def pat_a():
    return stitch(showcase_a_plan())


@pytest.fixture(scope="module")
def pat_b():
    return stitch(showcase_b_plan())


class TestBuildTree:
    def test_cut_counts(self, pat_a):
        assert build_tree(pat_a).n_cuts == 4  # (3-1)*(3-1)

    def test_two_by_two(self):
        p = stitch(square_grid_plan(2, 2))
        assert build_tree(p).n_cuts == 1

    def test_single_column_is_already_a_tree(self):
        p = stitch(single_ff_unit_plan())
        assert build_tree(p).n_cuts == 0


class TestPropagate:
    def test_trivial_state(self, pat_a):
        prop = propagate(build_tree(pat_a), 0.0, None)
        for row in prop.solutions:
            for sol in row:
                assert sol.rho == (0.0,) * 4
        assert prop.max_residual() == 0.0

    def test_unit_pattern_compatible(self, pat_a):
        prop = propagate(build_tree(pat_a), deg(12), None)
        assert prop.max_residual() < 1e-10

    def test_theta_phi_are_independent_paths(self, pat_b):
        tree = build_tree(pat_b)
        prop = propagate(tree, deg(10), None)
        # every cut reports two values; they agree only because the pattern
        # is built from units
        assert len(prop.theta_phi) == 4
        for _, theta, phi in prop.theta_phi:
            assert theta == pytest.approx(phi, abs=1e-10)
            assert theta != 0.0

    def test_out_of_domain_names_vertex(self, pat_b):
        with pytest.raises(OutOfDomain, match=r"vertex"):
            propagate(build_tree(pat_b), deg(60), None)

    def test_top_row_sequence_accepted(self, pat_a):
        tree = build_tree(pat_a)
        ref = propagate(tree, deg(10), None)
        seq = [deg(10)] + [ref.solutions[0][j].rho[3]
                           for j in range(pat_a.n - 1)]
        prop = propagate(tree, seq, None)
        assert prop.max_residual() < 1e-10

    def test_top_row_conflict_detected(self, pat_a):
        tree = build_tree(pat_a)
        with pytest.raises(PropagationConflict):
            propagate(tree, [deg(10), deg(3), deg(3)], None)

    def test_non_unit_pattern_incompatible(self, pat_b):
        # break one vertex: propagation still runs but theta != phi
        bad = pat_b.with_vertex(
            1, 1,
            Vertex4([x + d for x, d in zip(pat_b.vertex(1, 1).alpha,
                                           (deg(2), -deg(2), 0, 0))]),
        )
        prop = propagate(build_tree(bad), deg(10), None)
        assert prop.max_residual() > 1e-3


class TestCertify:
    def test_showcase_a(self, pat_a):
        rep = certify(pat_a, None, 200)
        assert rep.verdict
        assert rep.max_residual < 1e-8
        assert rep.interval[1] > deg(15)

    def test_showcase_b_all_four_choices(self, pat_b):
        choices = list(enumerate_branch_choices(pat_b))
        assert len(choices) == 4
        for ch in choices:
            rep = certify(pat_b, ch, 60)
            assert rep.verdict, rep.reason
            assert rep.max_residual < 1e-8

    def test_invalid_branch_choice_fails(self, pat_b):
        # outer column mixing branches between stacked units is inconsistent
        bad = [[pat_b.branch_default[i][j] for j in range(pat_b.n)]
               for i in range(pat_b.m)]
        bad[2][0] = BranchId.BRANCH_2
        rep = certify(pat_b, bad, 40)
        assert not rep.verdict

    def test_perturbation_flips_verdict(self, pat_a):
        v = pat_a.vertex(1, 1)
        alpha = list(v.alpha)
        alpha[0] += deg(0.5)
        alpha[2] -= deg(0.5)
        bad = pat_a.with_vertex(1, 1, Vertex4(alpha))
        rep = certify(bad, None, 60)
        assert not rep.verdict

    def test_perturbation_may_remove_the_branch_entirely(self, pat_a):
        # this perturbation keeps the vertex straight-line, which does not
        # carry the branch the plan assigned; certification refuses
        v = pat_a.vertex(1, 1)
        alpha = list(v.alpha)
        alpha[0] += deg(0.5)
        alpha[1] -= deg(0.5)
        bad = pat_a.with_vertex(1, 1, Vertex4(alpha))
        with pytest.raises(EmptyInterval):
            certify(bad, None, 60)

    def test_sign_flip_invariance(self, pat_a):
        rep = certify(pat_a, None, 50)
        assert rep.interval[0] == pytest.approx(-rep.interval[1])
        r_neg = rep.residuals[: len(rep.residuals) // 2]
        r_pos = rep.residuals[len(rep.residuals) // 2 + 1:]
        assert max(r_neg) == pytest.approx(max(r_pos), abs=1e-9)

    def test_report_json(self, pat_a):
        rep = certify(pat_a, None, 40)
        doc = rep.to_json()
        assert doc["verdict"] is True
        assert len(doc["samples_deg"]) == 40
        assert len(doc["per_cut"]) == 4
        # residual series per cut crease, one entry per sample
        for entry in doc["per_cut"]:
            assert len(entry["residuals"]) == 40
            assert entry["max_residual"] == max(entry["residuals"])
        assert "rigid-foldable: yes" in rep.summary()

    def test_zero_transmission_column_empty_interval(self):
        # symmetric flat-foldable vertices never fold their side creases on
        # branch 1, so the driving crease cannot move the pattern at all
        from quadfold import StitchPlan, make_flatfoldable_basic_unit

        u = make_flatfoldable_basic_unit(deg(70), deg(70))
        p = stitch(StitchPlan(columns=((u,),)))
        with pytest.raises(EmptyInterval):
            certify(p, None, 20)


class TestLargerBlankets:
    def test_herringbone_scales(self):
        from quadfold.fixtures import herringbone_plan

        p = stitch(herringbone_plan(4, 5))
        assert (p.m, p.n) == (4, 5)
        assert build_tree(p).n_cuts == 12
        rep = certify(p, None, 80)
        assert rep.verdict
        assert rep.max_residual < 1e-8

    def test_herringbone_sweep_rigid(self):
        from quadfold import sweep
        from quadfold.fixtures import herringbone_plan

        p = stitch(herringbone_plan(3, 3))
        res = sweep(p, None, 8, n_samples=60)
        assert res.max_rigidity_residual < 1e-9
        assert res.max_closure_residual < 1e-9


class TestNonUnitBlankets:
    def test_random_non_unit_pattern_is_incompatible(self, rng):
        """Generic vertex grids satisfy the panel sums but almost never the
        crease-angle compatibility."""
        from quadfold import QuadPattern
        from conftest import random_generic_vertex

        hits = 0
        for _ in range(5):
            v00 = random_generic_vertex(rng)
            v10 = random_generic_vertex(rng)
            v01 = random_generic_vertex(rng)
            a2 = (2 * math.pi - v00.alpha[3] - v10.alpha[0] - v01.alpha[2])
            if not 0.3 < a2 < math.pi - 0.3:
                continue
            rest = 2 * math.pi - a2
            a1 = 0.40 * rest
            a3 = 0.27 * rest
            v11 = Vertex4((a1, a2, a3, rest - a1 - a3))
            from quadfold import ClassTag, classify
            if classify(v11).tag is not ClassTag.GENERIC:
                continue
            grid = ((v00, v01), (v10, v11))
            branches = ((BranchId.BRANCH_1,) * 2,) * 2
            p = QuadPattern.from_vertices(grid, branches)
            prop = propagate(build_tree(p), deg(5), None)
            if prop.max_residual() > 1e-4:
                hits += 1
        assert hits >= 3

    def test_certifiable_with_flat_trivial_vertex(self):
        """A blanket can certify even when one vertex is not rigid-foldable
        by itself, as long as its creases never fold: the generic corner
        drives, a vertical and a horizontal line fold pass the motion around
        the reflex vertex, whose creases all stay flat."""
        from quadfold import QuadPattern

        v00 = Vertex4.from_degrees((80, 97, 93, 90))       # generic, drives
        v01 = Vertex4.from_degrees((70, 110, 150, 30))     # horizontal line
        v10 = Vertex4.from_degrees((80, 95, 85, 100))      # vertical line
        v11 = Vertex4.from_degrees((200, 40, 80, 40))      # reflex: trivial
        from quadfold import ClassTag, classify
        assert classify(v11).tag is ClassTag.TRIVIAL
        grid = ((v00, v01), (v10, v11))
        branches = (
            (BranchId.BRANCH_1, BranchId.LINE_SEGMENT_1),
            (BranchId.LINE_SEGMENT_1, BranchId.BRANCH_1),
        )
        p = QuadPattern.from_vertices(grid, branches)
        rep = certify(p, None, 80)
        assert rep.verdict, rep.reason
        # every crease incident to the trivial vertex stays flat
        labels = mv_assignment(p, None, rep.interval[1] / 2)
        for edge in (((1, 2), (2, 2)), ((2, 1), (2, 2)),
                     ((2, 2), (3, 2)), ((2, 2), (2, 3))):
            assert labels[edge] == "F"
        # but the pattern genuinely folds elsewhere
        assert "M" in labels.values() or "V" in labels.values()


class TestMvAssignment:
    def test_trivial_state_all_flat(self, pat_a):
        labels = mv_assignment(pat_a, None, 0.0)
        inner = [v for k, v in labels.items() if v != "B"]
        assert set(inner) == {"F"}

    def test_folded_state_signs(self, pat_a):
        labels = mv_assignment(pat_a, None, deg(12))
        assert "M" in labels.values() and "V" in labels.values()

    def test_flat_foldable_unit_opposite_sides(self):
        from quadfold import FFUnitMode

        p = stitch(single_ff_unit_plan(80, 100, 60, FFUnitMode.A_MINUS))
        labels = mv_assignment(p, None, deg(40))
        # branch-1 transmission flips sign between the two side creases of
        # the top vertex: rho4 = -rho2
        left = labels[((1, 0), (1, 1))]
        right = labels[((1, 1), (1, 2))]
        assert {left, right} == {"M", "V"}

    def test_requires_sample(self, pat_a):
        with pytest.raises(ValueError):
            mv_assignment(pat_a, None, None)
