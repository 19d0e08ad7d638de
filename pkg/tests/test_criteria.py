import itertools
import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from aodepletion.bodies import ConvexPolygon, Ellipsoid, HalfSpace, RoundedPolygon
from aodepletion.campaigns import random_wall_config
from aodepletion.criteria import (
    CuspWarning,
    improved_criterion_check,
    largest_qualifying_delta,
    theorem1_check,
    union_of_balls_check,
    wall_check,
)
from aodepletion.deltamax import CRITICAL_RATIO, delta_max, delta_max_wall
from aodepletion.errors import InputError
from aodepletion.geometry import Ball
from aodepletion.oracle import grid_common_point, minimax_delta
from aodepletion.sampling import random_config

SQUARE = [[0, 0], [1, 0], [1, 1], [0, 1]]
seeds = st.integers(0, 2**32 - 1)


def unit_balls():
    return [Ball([0, 0], 1), Ball([2, 0], 1), Ball([1, math.sqrt(3)], 1)]


class TestTheorem1:
    def test_below(self):
        rep = theorem1_check(unit_balls(), 0.15)
        assert rep.satisfied and rep.strict
        assert rep.threshold == pytest.approx(0.1547005383792515)

    def test_above(self):
        rep = theorem1_check(unit_balls(), 0.16)
        assert not rep.satisfied and not rep.strict

    def test_at_threshold_is_zero_volume_case(self):
        rep = theorem1_check(unit_balls(), CRITICAL_RATIO)
        assert rep.satisfied and not rep.strict

    def test_mixed_radii(self):
        bodies = [Ball([0, 0], 2), Ball([10, 0], 1), Ball([0, 10], 5)]
        rep = theorem1_check(bodies, 0.154)
        assert rep.satisfied and rep.limiting_body_index == 1

    def test_ellipse_limits(self):
        bodies = [Ball([0, 0], 1), Ellipsoid([5, 0], [2, 1]), Ball([0, 5], 1)]
        rep = theorem1_check(bodies, 0.1)
        assert rep.limiting_body_index == 1
        assert rep.threshold == pytest.approx(0.5 * CRITICAL_RATIO)
        assert not rep.satisfied

    def test_cusp_warns(self):
        bodies = [Ball([0, 0], 1), Ball([5, 0], 1), ConvexPolygon([[0, 3], [1, 3], [1, 4], [0, 4]])]
        with pytest.warns(CuspWarning, match="zero rolling radius"):
            rep = theorem1_check(bodies, 0.01)
        assert rep.threshold == 0.0 and not rep.satisfied and rep.limiting_body_index == 2
        assert rep.warning

    def test_needs_three(self):
        with pytest.raises(InputError):
            theorem1_check(unit_balls()[:2], 0.1)

    def test_rejects_halfspace(self):
        with pytest.raises(InputError):
            theorem1_check(unit_balls()[:2] + [HalfSpace([0, 1], -5)], 0.1)

    def test_negative_delta(self):
        with pytest.raises(InputError):
            theorem1_check(unit_balls(), -0.1)

    @given(seeds)
    def test_consistent_with_delta_max(self, seed):
        rng = np.random.default_rng(seed)
        cfg = random_config(rng, (1, 10), (0, 2))
        delta = rng.uniform(0, 1) * CRITICAL_RATIO * min(cfg.radii)
        assert theorem1_check(list(cfg), delta).strict
        assert delta_max(cfg).delta_max > delta


class TestWall:
    WALL = HalfSpace([0, 1], 0)

    def test_below(self):
        rep = wall_check([Ball([-1, 1], 1), Ball([1, 1], 1), self.WALL], 0.24)
        assert rep.satisfied and rep.threshold == 0.25

    def test_above(self):
        assert not wall_check([Ball([-1, 1], 1), Ball([1, 1], 1), self.WALL], 0.26).satisfied

    def test_unequal_contact(self):
        # radii 1 and 3 touching each other and the wall
        b1, b2 = Ball([0, 1], 1), Ball([2 * math.sqrt(3), 3], 3)
        rep = wall_check([b1, b2, self.WALL], 0.2)
        assert rep.satisfied and rep.limiting_body_index == 0
        assert minimax_delta([b1, b2, self.WALL]).value > 0.2
        assert delta_max_wall(b1, b2, self.WALL) > 0.2

    def test_two_walls(self):
        with pytest.raises(InputError):
            wall_check([Ball([0, 1], 1), self.WALL, HalfSpace([0, -1], -5)], 0.1)

    @given(seeds)
    def test_consistent_with_wall_solver(self, seed):
        rng = np.random.default_rng(seed)
        b1, b2, wall = random_wall_config(rng)
        delta = rng.uniform(0, 1) * 0.25 * min(b1.radius, b2.radius)
        assert wall_check([b1, b2, wall], delta).strict
        assert delta_max_wall(b1, b2, wall) > delta


class TestImproved:
    def test_ball_inside_itself(self):
        b = Ball([0, 0], 1)
        assert improved_criterion_check(b, b, 0.15)
        assert not improved_criterion_check(b, b, 0.155)

    def test_square_with_small_rounding_fails(self):
        inner = RoundedPolygon(SQUARE, 0.2)
        cap = 0.2 * CRITICAL_RATIO
        corner = 0.2 * (math.sqrt(2) - 1)
        assert corner > cap
        assert not improved_criterion_check(ConvexPolygon(SQUARE), inner, 0.0)

    def test_square_with_large_rounding_has_no_qualifying_radius(self):
        # the square's corners stay 0.45 (sqrt 2 - 1) ~ 0.186 away from the
        # rounded square, more than its shell allowance 0.45 * 0.1547 ~ 0.070
        inner = RoundedPolygon(SQUARE, 0.45)
        assert 0.45 * (math.sqrt(2) - 1) > 0.45 * CRITICAL_RATIO
        assert largest_qualifying_delta(ConvexPolygon(SQUARE), inner) is None

    def test_many_sided_polygon_gains_a_positive_radius(self):
        n = 64
        t = 2 * np.pi * np.arange(n) / n
        poly = ConvexPolygon(np.column_stack([np.cos(t), np.sin(t)]))
        r_in = math.cos(math.pi / n)
        inner = Ball([0, 0], r_in)
        d = largest_qualifying_delta(poly, inner)
        # vertices sit at distance 1 from the center: 1 + d = r_in (1 + CRITICAL_RATIO)
        assert d == pytest.approx(r_in * (1 + CRITICAL_RATIO) - 1, abs=1e-6)
        # the plain rolling-radius criterion gives nothing for a polygon
        with pytest.warns(CuspWarning):
            assert theorem1_check([poly, Ball([5, 0], 1), Ball([0, 5], 1)], d).threshold == 0.0

    def test_inner_not_contained(self):
        with pytest.raises(InputError):
            improved_criterion_check(Ball([0, 0], 1), Ball([0.5, 0], 1), 0.0)

    def test_out_of_range(self):
        b = Ball([0, 0], 1)
        assert not improved_criterion_check(b, b, -0.01)

    @pytest.mark.parametrize("body", [Ball([0, 0], 2.0), Ellipsoid([1, 1], [2, 1]),
                                      Ball([0, 0, 0], 1.0), RoundedPolygon(SQUARE, 0.3)])
    def test_never_weaker_than_rolling_radius(self, body):
        d = largest_qualifying_delta(body, body)
        assert d >= CRITICAL_RATIO * body.roll_radius * (1 - 1e-8) - 1e-9


class BallUnion:
    """Nonconvex body: a union of balls."""

    def __init__(self, balls):
        self.balls = balls
        self.dim = balls[0].dim

    def distance(self, pts):
        return np.min([b.distance(pts) for b in self.balls], axis=0)

    def bounds(self, delta=0.0):
        los, his = zip(*(b.bounds(delta) for b in self.balls))
        return np.min(los, axis=0), np.max(his, axis=0)


class TestUnionOfBalls:
    def l_shape(self, shift, r=0.6):
        pts = np.array([[0, 0], [1, 0], [0, 1]], float) + shift
        return [Ball(p, r) for p in pts]

    def bodies(self):
        return [self.l_shape([0, 0]), self.l_shape([2.3, 0.1]), self.l_shape([0.2, 2.3])]

    def test_threshold_from_smallest_ball(self):
        rep = union_of_balls_check(self.bodies(), 0.09)
        assert rep.threshold == pytest.approx(0.6 * CRITICAL_RATIO)
        assert rep.satisfied

    def test_no_triple_point_below_threshold(self):
        bodies = self.bodies()
        thr = union_of_balls_check(bodies, 0.0).threshold
        # every triple point of the unions is a triple point of three member balls
        exact = min(delta_max(list(t)).delta_max for t in itertools.product(*bodies))
        assert exact >= thr
        unions = [BallUnion(b) for b in bodies]
        assert grid_common_point(unions, 0.99 * thr, 2e-3) is None


def test_cusp_warning_is_a_warning():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        with pytest.raises(CuspWarning):
            theorem1_check([ConvexPolygon(SQUARE), Ball([5, 5], 1), Ball([-5, 5], 1)], 0.1)
