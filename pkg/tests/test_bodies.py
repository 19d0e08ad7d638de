import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from aodepletion.bodies import (
    ConvexPolygon,
    Ellipsoid,
    HalfSpace,
    RoundedPolygon,
    check_bodies_disjoint,
    penetration_depth,
    rolling_radius,
    sample_directions,
)
from aodepletion.errors import CapabilityError, InputError
from aodepletion.geometry import Ball

SQUARE = [[0, 0], [1, 0], [1, 1], [0, 1]]


class TestRollingRadius:
    def test_ball(self):
        assert rolling_radius(Ball([0, 0, 0], 2.0)) == 2.0

    def test_polygon(self):
        assert rolling_radius(ConvexPolygon([[0, 0], [3, 0], [1, 2]])) == 0.0

    def test_halfspace(self):
        assert rolling_radius(HalfSpace([0, 1], 0)) == math.inf

    def test_rounded_polygon(self):
        assert rolling_radius(RoundedPolygon(SQUARE, 0.2)) == 0.2

    def test_unsupported(self):
        with pytest.raises(CapabilityError):
            rolling_radius(object())

    def test_ellipse_matches_curvature_sampling(self):
        e = Ellipsoid([0, 0], [2, 1])
        assert rolling_radius(e) == 0.5
        # radius of curvature of (a cos t, b sin t) is (a^2 s^2 + b^2 c^2)^1.5 / (a b)
        t = np.linspace(0, 2 * np.pi, 200001)
        rc = (4 * np.sin(t) ** 2 + np.cos(t) ** 2) ** 1.5 / 2
        assert rc.min() == pytest.approx(0.5, rel=1e-9)

    def test_ellipsoid_3d(self):
        assert rolling_radius(Ellipsoid([0, 0, 0], [3, 2, 1])) == pytest.approx(1 / 3)


class TestHalfSpace:
    def test_normalizes(self):
        h = HalfSpace([0, 2], 4)
        np.testing.assert_array_equal(h.normal, [0, 1])
        assert h.offset == 2.0

    def test_distance(self):
        h = HalfSpace([0, 1], 0)
        np.testing.assert_array_equal(h.distance([[0, -3], [5, 0.5]]), [0, 0.5])

    def test_zero_normal(self):
        with pytest.raises(InputError):
            HalfSpace([0, 0], 1)

    def test_no_bounds(self):
        assert HalfSpace([1, 0], 0).bounds(1.0) is None


class TestEllipsoid:
    def test_distance_along_axes(self):
        e = Ellipsoid([1, 1], [2, 1])
        np.testing.assert_allclose(e.distance([[4, 1], [1, 3], [1, 1]]), [1, 1, 0], atol=1e-12)

    def test_rotated(self):
        c, s = math.cos(0.3), math.sin(0.3)
        e = Ellipsoid([0, 0], [2, 1], [[c, -s], [s, c]])
        assert float(e.distance([3 * c, 3 * s])) == pytest.approx(1.0, abs=1e-12)

    @given(st.floats(0, 2 * math.pi), st.floats(0.01, 5))
    def test_distance_against_dense_boundary(self, phi, r):
        e = Ellipsoid([0, 0], [2, 0.7])
        x = np.array([(2 + r) * math.cos(phi), (0.7 + r) * math.sin(phi)])
        t = np.linspace(0, 2 * np.pi, 400001)
        bd = np.column_stack([2 * np.cos(t), 0.7 * np.sin(t)])
        brute = np.min(np.linalg.norm(bd - x, axis=1))
        assert float(e.distance(x)) == pytest.approx(brute, abs=1e-6)

    def test_support(self):
        e = Ellipsoid([0, 0], [2, 1])
        np.testing.assert_allclose(e.support(np.array([1.0, 0.0])), [2, 0])
        assert float(e.support_value(np.array([0.0, 1.0]))) == pytest.approx(1.0)

    def test_bad_rotation(self):
        with pytest.raises(InputError):
            Ellipsoid([0, 0], [1, 1], [[1, 1], [0, 1]])


class TestPolygon:
    def test_clockwise_input_is_reordered(self):
        p = ConvexPolygon(SQUARE[::-1])
        assert float(p.distance([0.5, 0.5])) == 0.0
        assert float(p.distance([2, 0.5])) == 1.0

    def test_corner_distance(self):
        assert float(ConvexPolygon(SQUARE).distance([2, 2])) == pytest.approx(math.sqrt(2))

    def test_nonconvex_rejected(self):
        with pytest.raises(InputError):
            ConvexPolygon([[0, 0], [2, 0], [1, 0.2], [2, 2], [0, 2]])

    def test_collinear_vertex_rejected(self):
        with pytest.raises(InputError):
            ConvexPolygon([[0, 0], [1, 0], [2, 0], [2, 2]])


class TestRoundedPolygon:
    def test_core_and_distance(self):
        r = RoundedPolygon(SQUARE, 0.2)
        # the corner of the square is rho (sqrt 2 - 1) outside the rounded body
        assert float(r.distance([1, 1])) == pytest.approx(0.2 * (math.sqrt(2) - 1), rel=1e-12)
        assert float(r.distance([1.5, 0.5])) == pytest.approx(0.5)

    def test_rho_at_inradius_becomes_disk(self):
        r = RoundedPolygon(SQUARE, 0.5)
        assert float(r.distance([3, 0.5])) == pytest.approx(2.0)

    def test_rho_at_inradius_of_rectangle_becomes_stadium(self):
        r = RoundedPolygon([[0, 0], [2, 0], [2, 1], [0, 1]], 0.5)
        np.testing.assert_allclose(r.distance([[3, 0.5], [1, 3], [1.2, 0.5]]), [1, 2, 0])

    def test_rho_too_large(self):
        with pytest.raises(InputError):
            RoundedPolygon(SQUARE, 0.6)


def test_sample_directions_unit():
    for dim in (2, 3, 4):
        u = sample_directions(dim, 100)
        np.testing.assert_allclose(np.linalg.norm(u, axis=1), 1.0)


class TestPenetration:
    def test_balls(self):
        assert penetration_depth(Ball([0, 0], 1), Ball([3, 0], 1)) == pytest.approx(-1)

    def test_ball_wall(self):
        assert penetration_depth(HalfSpace([0, 1], 0), Ball([0, 0.5], 1)) == pytest.approx(0.5)

    def test_polygon_ball(self):
        d = penetration_depth(ConvexPolygon(SQUARE), Ball([2.5, 0.5], 1))
        assert d == pytest.approx(-0.5, abs=1e-9)

    def test_disjoint_check_names_pair(self):
        bodies = [Ball([0, 3], 1), ConvexPolygon(SQUARE), Ball([1.5, 0.5], 1)]
        with pytest.raises(InputError, match="bodies 1 and 2"):
            check_bodies_disjoint(bodies)
