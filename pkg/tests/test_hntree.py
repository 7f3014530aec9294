import random
from fractions import Fraction

import pytest

from tiltwall.exactnum import QuadPoly, QuadraticIrrational as QI
from tiltwall.hntree import (
    PiecewiseQuadratic,
    PointOnWallError,
    TreeLeaf,
    TreeNode,
    assemble_chd0,
    assemble_chd1,
    classify_breakpoints,
    hn_factors_at,
    serre_dual_function,
    tree_from_json,
    tree_leaves,
    tree_to_json,
    trivial_chd,
    validate_tree,
)
from tiltwall.lattice import ChernClass, chd_polynomial
from tiltwall.walls import Semicircle
from tiltwall import catalog
from conftest import chd0_value_by_factors

F = Fraction


def n4_tree() -> TreeNode:
    return TreeNode(
        ChernClass(2, 0, -4),
        Semicircle(F(-5, 2), F(9, 4)),
        [
            TreeLeaf(ChernClass(2, -2, 1)),
            TreeNode(
                ChernClass(0, 2, -5),
                Semicircle(F(-5, 2), F(1, 4)),
                [
                    TreeLeaf(ChernClass(2, -4, 4)),
                    TreeLeaf(ChernClass(-2, 6, -9)),
                ],
            ),
        ],
    )


class TestValidation:
    def test_known_good_tree(self):
        report = validate_tree(n4_tree())
        assert report and not report.violations

    def test_swapped_children_break_well_order(self):
        tree = n4_tree()
        inner = tree.children[1]
        inner.children = [inner.children[1], inner.children[0]]
        report = validate_tree(tree)
        assert not report
        assert any("well-ordered" in v for v in report.violations)

    def test_bad_child_sum(self):
        tree = TreeNode(
            ChernClass(2, 0, -2),
            Semicircle(F(-3, 2), F(1, 4)),
            [TreeLeaf(ChernClass(2, -2, 1)), TreeLeaf(ChernClass(0, 2, -2))],
        )
        report = validate_tree(tree)
        assert any("sum" in v for v in report.violations)

    def test_wrong_wall(self):
        tree = TreeNode(
            ChernClass(2, 0, -2),
            Semicircle(F(-2), F(1)),
            [TreeLeaf(ChernClass(4, -4, 2)), TreeLeaf(ChernClass(-2, 4, -4))],
        )
        report = validate_tree(tree)
        assert any("wall" in v for v in report.violations)

    def test_single_child_rejected(self):
        tree = TreeNode(
            ChernClass(2, 0, -2),
            Semicircle(F(-3, 2), F(1, 4)),
            [TreeLeaf(ChernClass(2, 0, -2))],
        )
        assert any("two children" in v for v in validate_tree(tree).violations)

    def test_inner_wall_must_nest(self):
        tree = n4_tree()
        # widen the inner wall beyond the outer one
        inner = tree.children[1]
        bad = TreeNode(
            inner.cls,
            Semicircle(F(-5, 2), F(25, 4)),
            [TreeLeaf(ChernClass(2, -10, 25)), TreeLeaf(ChernClass(-2, 12, -30))],
        )
        tree.children[1] = bad
        report = validate_tree(tree)
        assert any("nested" in v for v in report.violations)

    def test_json_round_trip(self):
        tree = n4_tree()
        clone = tree_from_json(tree_to_json(tree))
        assert tree_to_json(clone) == tree_to_json(tree)
        assert [l.cls for l in tree_leaves(clone)] == [l.cls for l in tree_leaves(tree)]


class TestHNFactors:
    def test_inside_both_walls(self):
        factors = hn_factors_at(n4_tree(), F(1, 50), F(-5, 2))
        assert [c for c, _ in factors] == [
            ChernClass(2, -2, 1),
            ChernClass(2, -4, 4),
            ChernClass(-2, 6, -9),
        ]
        slopes = [s for _, s in factors]
        assert slopes == sorted(slopes, reverse=True)
        assert len(set(slopes)) == len(slopes)

    def test_gieseker_chamber(self):
        factors = hn_factors_at(n4_tree(), F(2), F(-5, 2))
        assert [c for c, _ in factors] == [ChernClass(2, 0, -4)]

    def test_between_walls(self):
        # inner wall tops out at 1/8 over beta = -5/2; outer at 9/8
        factors = hn_factors_at(n4_tree(), F(1, 2), F(-5, 2))
        assert [c for c, _ in factors] == [ChernClass(2, -2, 1), ChernClass(0, 2, -5)]

    def test_point_on_wall_refused(self):
        with pytest.raises(PointOnWallError):
            hn_factors_at(n4_tree(), F(9, 8), F(-5, 2))

    def test_trivial_tree(self):
        leaf = TreeLeaf(ChernClass(2, 0, -1))
        assert hn_factors_at(leaf, F(1), F(-1)) == [(leaf.cls, F(-1))]

    def test_right_of_vertical_wall_rejected(self):
        with pytest.raises(ValueError, match="vertical wall"):
            hn_factors_at(n4_tree(), F(1), F(0))


class TestPiecewiseQuadratic:
    def test_shape_enforced(self):
        with pytest.raises(ValueError, match="one more piece"):
            PiecewiseQuadratic([QI(0)], [QuadPoly(0)])
        with pytest.raises(ValueError, match="ascending"):
            PiecewiseQuadratic(
                [QI(1), QI(0)], [QuadPoly(0), QuadPoly(1), QuadPoly(2)]
            )

    def test_eval_and_piece_lookup(self):
        fn = assemble_chd0(n4_tree())
        assert fn.eval_at(F(0)) == QI(0)
        assert fn.eval_at(F(3, 2)) == QI(F(1, 4))
        assert fn.eval_at(F(5, 2)) == QI(F(5, 2))  # (x-1)^2 + (x-2)^2
        assert fn.eval_at(F(4)) == QI(12)

    def test_reflect_involution(self):
        fn = assemble_chd0(n4_tree())
        assert fn.reflect().reflect() == fn

    def test_json_round_trip_with_radical(self):
        fn = trivial_chd(ChernClass(2, 0, -2))
        clone = PiecewiseQuadratic.from_json(fn.to_json())
        assert clone == fn
        assert clone.breakpoints == [QI.sqrt(2)]


class TestAssembly:
    def test_n4_function(self):
        fn = assemble_chd0(n4_tree())
        assert fn.breakpoints == [QI(1), QI(2), QI(3)]
        assert fn.pieces == [
            QuadPoly(0),
            QuadPoly(1, -2, 1),
            QuadPoly(5, -6, 2),
            QuadPoly(-4, 0, 1),
        ]
        assert fn.check_continuity() and fn.check_nonnegative()

    def test_trivial_sqrt_breakpoint(self):
        fn = trivial_chd(ChernClass(2, 0, -2))
        assert fn.breakpoints == [QI.sqrt(2)]
        assert fn.pieces == [QuadPoly(0), QuadPoly(-2, 0, 1)]

    def test_trivial_rejects_bad_classes(self):
        with pytest.raises(ValueError):
            trivial_chd(ChernClass(2, 0, 1))  # negative discriminant
        with pytest.raises(ValueError):
            trivial_chd(ChernClass(-2, 0, 2))
        with pytest.raises(ValueError):
            trivial_chd(ChernClass(0, -2, 1))

    def test_invalid_tree_refused(self):
        bad = TreeNode(
            ChernClass(2, 0, -2),
            Semicircle(F(-3, 2), F(1, 4)),
            [TreeLeaf(ChernClass(2, -2, 1)), TreeLeaf(ChernClass(0, 2, -2))],
        )
        with pytest.raises(ValueError, match="invalid tree"):
            assemble_chd0(bad)

    def test_chd1_alternating_identity(self):
        tree = n4_tree()
        chd0, chd1 = assemble_chd0(tree), assemble_chd1(tree)
        root_poly = chd_polynomial(tree.cls)
        assert chd1.breakpoints == chd0.breakpoints
        for p0, p1 in zip(chd0.pieces, chd1.pieces):
            assert p0 - p1 == root_poly
        assert chd1.domain_start == QI(0)  # -mu of the root
        assert chd1.check_nonnegative()

    def test_factor_sum_oracle(self):
        """chd0 values recomputed from HN factors at a = 0 agree."""
        rng = random.Random(3)
        for sid in catalog.list_scenarios():
            scenario = catalog.load_scenario(sid)
            if scenario.tree is None or scenario.trivial:
                continue
            fn = assemble_chd0(scenario.tree)
            hits = 0
            while hits < 12:
                x = F(rng.randint(-40, 80), 8)
                try:
                    expected = chd0_value_by_factors(scenario.tree, x)
                except (PointOnWallError, ValueError):
                    continue
                assert fn.eval_at(x) == QI(expected), (sid, x)
                hits += 1


class TestBreakpointReports:
    def test_smooth_scenarios(self):
        for sid in ("ppas-ideal-2", "ppas-ideal-4-collinear", "abelian12-ideal-point"):
            tree = catalog.load_scenario(sid).tree
            for report in classify_breakpoints(tree):
                assert report.derivative_jump == QI(0)
                assert report.differentiable

    def test_jump_with_overlap(self):
        tree = catalog.load_scenario("ppas-ideal-5-W2").tree
        by_x = {r.x: r for r in classify_breakpoints(tree)}
        r2 = by_x[QI(2)]
        assert r2.derivative_jump == QI(2)
        assert not r2.differentiable
        assert r2.overlap and len(r2.contributing_leaves) == 2
        assert r2.condition_tags == frozenset({"a", "c"})
        r3 = by_x[QI(3)]
        assert r3.derivative_jump == QI(0) and r3.differentiable

    def test_jump_without_overlap(self):
        tree = catalog.load_scenario("ppas-ideal-3-collinear").tree
        by_x = {r.x: r for r in classify_breakpoints(tree)}
        r = by_x[QI(2)]
        assert r.derivative_jump == QI(2)
        assert not r.overlap
        assert r.condition_tags == frozenset({"a"})

    def test_jump_matches_piece_derivatives(self):
        for sid in catalog.list_scenarios():
            scenario = catalog.load_scenario(sid)
            if scenario.tree is None or scenario.trivial:
                continue
            fn = assemble_chd0(scenario.tree)
            for i, report in enumerate(classify_breakpoints(scenario.tree)):
                left = fn.pieces[i].derivative()
                right = fn.pieces[i + 1].derivative()
                from tiltwall.exactnum import quad_eval

                assert quad_eval(right, report.x) - quad_eval(left, report.x) == (
                    report.derivative_jump
                )


class TestSerreDual:
    def test_structure_sheaf_pair(self):
        fn = catalog.load_scenario("ppas-structure-sheaf").expected_chd0
        dual = serre_dual_function(fn)
        assert dual.breakpoints == [QI(0)]
        assert dual.pieces == [QuadPoly(0, 0, 1), QuadPoly(0)]
        assert serre_dual_function(dual) == fn

    def test_involution_on_catalog(self):
        for sid in catalog.list_scenarios():
            fn = catalog.load_scenario(sid).expected_chd0
            if fn is None:
                continue
            assert serre_dual_function(serre_dual_function(fn)) == fn
