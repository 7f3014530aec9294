import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tiltwall.lattice import ChernClass, SurfaceConfig, class_sub, discriminant, twist
from tiltwall.walls import (
    Nesting,
    Semicircle,
    VerticalWall,
    enumerate_candidates,
    nesting,
    slope_crossing_oracle,
    wall_a_at,
    wall_between,
    wall_from_json,
)
from conftest import equal_slope_height, fit_circle_through_heights, random_class

F = Fraction
ints = st.integers(min_value=-10, max_value=10)
small_classes = st.builds(
    lambda a, b, c: ChernClass(2 * a, 2 * b, F(c, 2)),
    ints, ints, st.integers(min_value=-20, max_value=20),
)


class TestWallBetween:
    def test_known_wall_two_witnesses(self):
        v = ChernClass(2, 0, -2)
        expected = Semicircle(F(-3, 2), F(1, 4))
        assert wall_between(v, ChernClass(4, -4, 2)) == expected
        assert wall_between(v, ChernClass(2, -2, 1)) == expected

    def test_rank2_witness(self):
        wall = wall_between(ChernClass(2, 0, -5), ChernClass(4, -6, 4))
        assert wall == Semicircle(F(-7, 3), F(4, 9))

    def test_proportional_gives_none(self):
        assert wall_between(ChernClass(2, 0, -2), ChernClass(4, 0, -4)) is None
        assert wall_between(ChernClass(2, 0, -2), ChernClass(-2, 0, 2)) is None

    def test_vertical_wall(self):
        wall = wall_between(ChernClass(2, 0, -2), ChernClass(0, 0, 1))
        assert wall == VerticalWall(F(0))

    def test_empty_circle_gives_none(self):
        # equal-slope locus with negative radius squared: no real wall
        # pairing^2 = 4 < 16 = disc product, so radius_sq < 0
        assert wall_between(ChernClass(2, 0, -1), ChernClass(2, 2, 0)) is None

    @given(small_classes, small_classes)
    def test_sub_and_quotient_share_wall(self, v, w):
        assert wall_between(v, w) == wall_between(v, class_sub(v, w))

    @given(small_classes, small_classes)
    def test_radius_identity(self, v, w):
        wall = wall_between(v, w)
        if not isinstance(wall, Semicircle):
            return
        d01 = F(v.v0 * w.v1 - v.v1 * w.v0)
        pairing = v.v1 * w.v1 - v.v0 * w.v2 - v.v2 * w.v0
        assert wall.radius_sq * d01 * d01 == pairing * pairing - discriminant(
            v
        ) * discriminant(w)

    @given(small_classes, small_classes)
    def test_top_point_on_zero_slope_locus(self, v, w):
        wall = wall_between(v, w)
        if not isinstance(wall, Semicircle):
            return
        assert twist(v, wall.center).t2 - wall.radius_sq * v.v0 / 2 == 0

    @given(small_classes, small_classes)
    @settings(max_examples=60)
    def test_against_circle_fitting_oracle(self, v, w):
        """Fit the equal-slope locus through sampled points; must match."""
        wall = wall_between(v, w)
        if not isinstance(wall, Semicircle):
            return
        b1 = wall.center
        b2 = wall.center + F(1, 7)
        a1 = equal_slope_height(v, w, b1)
        a2 = equal_slope_height(v, w, b2)
        if a1 is None or a2 is None:
            return
        s, r2 = fit_circle_through_heights([(b1, a1), (b2, a2)])
        assert (s, r2) == (wall.center, wall.radius_sq)
        # a third point confirms the locus really is that circle
        b3 = wall.center - F(2, 5)
        a3 = equal_slope_height(v, w, b3)
        assert (b3 - s) ** 2 + 2 * a3 == r2


class TestWallGeometry:
    def test_degenerate_semicircle_rejected(self):
        with pytest.raises(ValueError):
            Semicircle(F(0), F(0))
        with pytest.raises(ValueError):
            Semicircle(F(0), F(-1))

    def test_wall_a_at(self):
        assert wall_a_at(Semicircle(F(-5, 2), F(9, 4)), F(-2)) == 1
        assert wall_a_at(Semicircle(F(-3, 2), F(1, 4)), F(-3, 2)) == F(1, 8)
        assert wall_a_at(Semicircle(F(-3, 2), F(1, 4)), F(0)) is None
        with pytest.raises(ValueError, match="no height"):
            wall_a_at(VerticalWall(F(0)), F(0))

    def test_json_round_trip(self):
        for wall in (Semicircle(F(-7, 3), F(4, 9)), VerticalWall(F(1, 2))):
            assert wall_from_json(wall.to_json()) == wall


class TestNesting:
    def test_concentric(self):
        r = nesting(Semicircle(F(-5, 2), F(5, 4)), Semicircle(F(-5, 2), F(1, 4)))
        assert r.relation is Nesting.NESTED
        assert r.inner == Semicircle(F(-5, 2), F(1, 4))

    def test_offset_nested(self):
        r = nesting(Semicircle(F(-3), F(4)), Semicircle(F(-7, 3), F(4, 9)))
        assert r.relation is Nesting.NESTED
        assert r.inner == Semicircle(F(-7, 3), F(4, 9))

    def test_equal(self):
        w = Semicircle(F(-3), F(4))
        assert nesting(w, w).relation is Nesting.EQUAL

    def test_disjoint_and_crossing(self):
        assert (
            nesting(Semicircle(F(0), F(1)), Semicircle(F(10), F(1))).relation
            is Nesting.DISJOINT
        )
        assert (
            nesting(Semicircle(F(0), F(4)), Semicircle(F(2), F(4))).relation
            is Nesting.CROSSING
        )

    def test_tangent_counts_as_crossing(self):
        # internally tangent at beta = 3: treated as non-strict, hence crossing
        r = nesting(Semicircle(F(0), F(9)), Semicircle(F(2), F(1)))
        assert r.relation is Nesting.CROSSING

    def test_vertical_rejected(self):
        with pytest.raises(ValueError):
            nesting(VerticalWall(F(0)), Semicircle(F(0), F(1)))


class TestEnumeration:
    def test_precondition_errors(self):
        v = ChernClass(2, 0, -5)
        with pytest.raises(ValueError, match="accumulate"):
            enumerate_candidates(v, F(-2), F(0))
        with pytest.raises(ValueError, match="a_max"):
            enumerate_candidates(v, F(-2), F(1), F(1, 2))
        with pytest.raises(ValueError, match="wrong side"):
            enumerate_candidates(v, F(1), F(1, 100))
        with pytest.raises(ValueError, match="negative discriminant"):
            enumerate_candidates(ChernClass(2, 0, 1), F(-1), F(1, 100))
        with pytest.raises(ValueError, match="heart"):
            enumerate_candidates(ChernClass(0, -2, 1), F(-2), F(1, 100))

    def test_all_walls_cross_segment(self):
        v = ChernClass(2, 0, -25)
        for c in enumerate_candidates(v, F(-6), F(1, 100), F(30)):
            assert F(1, 100) <= c.cross_a <= 30
            assert wall_a_at(c.wall, F(-6)) == c.cross_a

    def test_sorted_outermost_first(self):
        cands = enumerate_candidates(ChernClass(2, 0, -5), F(-2), F(1, 100), F(10))
        heights = [c.cross_a for c in cands]
        assert heights == sorted(heights, reverse=True)

    def test_witness_normalized_and_grouped(self):
        cands = enumerate_candidates(ChernClass(2, 0, -2), F(-3, 2), F(1, 100), F(10))
        assert len(cands) == 1
        assert cands[0].witness == min(cands[0].witnesses, key=lambda c: (c.v0, c.v1, c.v2))
        # both known decompositions appear among the witnesses
        assert ChernClass(0, 2, -3) in cands[0].witnesses  # quotient side of (2,-2,1)
        assert ChernClass(-2, 4, -4) in cands[0].witnesses  # quotient side of (4,-4,2)

    def test_strict_mode_is_subset(self):
        v = ChernClass(2, 0, -25)
        loose = enumerate_candidates(v, F(-6), F(1, 100), F(30))
        strict = enumerate_candidates(v, F(-6), F(1, 100), F(30), strict=True)
        assert {c.wall for c in strict} <= {c.wall for c in loose}

    def test_thread_counts_agree(self):
        v = ChernClass(2, 0, -5)
        base = enumerate_candidates(v, F(-2), F(1, 100), F(10), threads=1)
        for n in (2, 3, 8):
            assert enumerate_candidates(v, F(-2), F(1, 100), F(10), threads=n) == base

    def test_pairwise_nesting_of_output(self):
        cands = enumerate_candidates(ChernClass(2, 0, -25), F(-6), F(1, 100), F(30))
        for i in range(len(cands)):
            for j in range(i + 1, len(cands)):
                rel = nesting(cands[i].wall, cands[j].wall)
                assert rel.relation is Nesting.NESTED

    def test_random_classes_never_crash(self):
        rng = random.Random(7)
        for _ in range(25):
            v = random_class(rng)
            if discriminant(v) < 0:
                continue
            if v.v0 > 0:
                beta = F(v.v1, v.v0) - 1
            elif v.v1 > 0:
                beta = F(-1)
            else:
                continue
            cands = enumerate_candidates(v, beta, F(1, 10), F(5))
            for c in cands:
                assert discriminant(c.witness) >= 0
                assert discriminant(class_sub(v, c.witness)) >= 0


class TestOracle:
    def test_confirms_known_wall(self):
        v, w = ChernClass(2, 0, -2), ChernClass(4, -4, 2)
        wall = wall_between(v, w)
        assert slope_crossing_oracle(v, w, wall, F(1, 64))

    def test_rejects_perturbed_wall(self):
        v, w = ChernClass(2, 0, -2), ChernClass(4, -4, 2)
        wall = wall_between(v, w)
        shifted = Semicircle(wall.center + F(1, 32), wall.radius_sq)
        assert not slope_crossing_oracle(v, w, shifted, F(1, 64))
        inflated = Semicircle(wall.center, wall.radius_sq + F(1, 32))
        assert not slope_crossing_oracle(v, w, inflated, F(1, 64))

    def test_vertical_wall_with_skyscraper(self):
        v, w = ChernClass(2, 0, -2), ChernClass(0, 0, 1)
        wall = wall_between(v, w)
        assert wall == VerticalWall(F(0))
        assert slope_crossing_oracle(v, w, wall, F(1, 64))

    def test_rejects_bad_grid(self):
        with pytest.raises(ValueError):
            slope_crossing_oracle(
                ChernClass(2, 0, -2), ChernClass(4, -4, 2), Semicircle(F(-3, 2), F(1, 4)), 0
            )
