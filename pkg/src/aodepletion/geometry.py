"""Vectors, balls and triangles in n dimensions, plus the plane reduction
used to turn any triplet of balls into three coplanar disks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateInputError, InputError

#: Absolute tolerance for geometric predicates, in units of the largest radius.
TOL = 1e-9

#: Triangle is collinear when twice its area is below this times (max side)^2.
COLLINEAR_TOL = 1e-9


def as_vec(x, dim: int | None = None) -> np.ndarray:
    """Convert ``x`` to a finite float vector of length >= 2."""
    v = np.asarray(x, dtype=float)
    if v.ndim != 1 or v.size < 2:
        raise InputError(f"expected a vector with at least 2 coordinates, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise InputError("vector coordinates must be finite")
    if dim is not None and v.size != dim:
        raise InputError(f"dimension mismatch: expected {dim}, got {v.size}")
    return v


@dataclass(frozen=True, eq=False)
class Ball:
    """Closed ball ``B(center, radius)``."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_vec(self.center))
        r = float(self.radius)
        if not (r > 0 and math.isfinite(r)):
            raise InputError(f"ball radius must be positive and finite, got {self.radius}")
        object.__setattr__(self, "radius", r)

    @property
    def dim(self) -> int:
        return self.center.size

    def __repr__(self):
        return f"Ball(center={self.center.tolist()}, radius={self.radius!r})"

    def __eq__(self, other):
        if not isinstance(other, Ball):
            return NotImplemented
        return self.radius == other.radius and np.array_equal(self.center, other.center)

    __hash__ = None

    # Shape protocol shared with the convex bodies in ``bodies``.
    def distance(self, points) -> np.ndarray:
        p = np.asarray(points, dtype=float)
        return np.maximum(np.linalg.norm(p - self.center, axis=-1) - self.radius, 0.0)

    def support(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        return self.center + self.radius * u / np.linalg.norm(u, axis=-1, keepdims=True)

    def support_value(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        return u @ self.center + self.radius * np.linalg.norm(u, axis=-1)

    def bounds(self, delta: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
        r = self.radius + delta
        return self.center - r, self.center + r

    @property
    def roll_radius(self) -> float:
        return self.radius

    def scalar_distance(self):
        c = tuple(self.center.tolist())
        r = self.radius

        def dist(x):
            return max(math.dist(x, c) - r, 0.0)

        return dist


def dist_point_ball(x, b: Ball) -> float:
    """Distance from ``x`` to the ball, zero inside."""
    x = as_vec(x, b.dim)
    return max(float(np.linalg.norm(x - b.center)) - b.radius, 0.0)


def in_dilation(x, b: Ball, delta: float) -> bool:
    """Membership in the outer parallel body ``B(center, radius + delta)``."""
    if delta < 0:
        raise InputError(f"dilation radius must be nonnegative, got {delta}")
    return dist_point_ball(x, b) <= delta


@dataclass(frozen=True)
class TriangleGeometry:
    """Triangle with side ``sides[i]`` opposite ``corners[i]`` and angle
    ``angles[i]`` at ``corners[i]``."""

    corners: tuple[np.ndarray, np.ndarray, np.ndarray]
    sides: tuple[float, float, float]
    angles: tuple[float, float, float]
    collinear: bool


def _angle_from_sides(opp: float, a: float, b: float) -> float:
    c = (a * a + b * b - opp * opp) / (2.0 * a * b)
    return math.acos(min(1.0, max(-1.0, c)))


def triangle_from_centers(r1, r2, r3) -> TriangleGeometry:
    """Side lengths and interior angles of the triangle with the given corners.

    Angles come from the cosine rule.  Corners must lie in a common plane;
    use :func:`reduce_to_plane` first when ``n > 2``.
    """
    pts = [as_vec(r) for r in (r1, r2, r3)]
    dim = pts[0].size
    for p in pts[1:]:
        as_vec(p, dim)
    sides = (
        float(np.linalg.norm(pts[1] - pts[2])),
        float(np.linalg.norm(pts[0] - pts[2])),
        float(np.linalg.norm(pts[0] - pts[1])),
    )
    if min(sides) == 0.0:
        raise InputError("triangle corners must be distinct")
    angles = (
        _angle_from_sides(sides[0], sides[1], sides[2]),
        _angle_from_sides(sides[1], sides[0], sides[2]),
        _angle_from_sides(sides[2], sides[0], sides[1]),
    )
    e1, e2 = pts[1] - pts[0], pts[2] - pts[0]
    # |e1 x e2| in any dimension via the Gram determinant
    gram = float(e1 @ e1) * float(e2 @ e2) - float(e1 @ e2) ** 2
    twice_area = math.sqrt(max(gram, 0.0))
    collinear = twice_area < COLLINEAR_TOL * max(sides) ** 2
    return TriangleGeometry(tuple(pts), sides, angles, collinear)


def side_from_angle(alpha: float, adj1: float, adj2: float) -> float:
    """Side opposite ``alpha`` given the two adjacent sides (cosine rule)."""
    return math.sqrt(max(adj1 * adj1 + adj2 * adj2 - 2.0 * adj1 * adj2 * math.cos(alpha), 0.0))


def barycentric(p, a, b, c) -> np.ndarray:
    """Barycentric coordinates of 2D point ``p`` in triangle ``(a, b, c)``."""
    p, a, b, c = (np.asarray(v, dtype=float) for v in (p, a, b, c))
    m = np.column_stack([b - a, c - a])
    det = np.linalg.det(m)
    if det == 0.0:
        raise DegenerateInputError("barycentric coordinates of a degenerate triangle")
    s, t = np.linalg.solve(m, p - a)
    return np.array([1.0 - s - t, s, t])


@dataclass(frozen=True, eq=False)
class PlaneMap:
    """Isometric embedding ``x2 -> origin + x2 @ basis`` of a plane in R^n."""

    origin: np.ndarray
    basis: np.ndarray  # shape (2, n), orthonormal rows

    def lift(self, x2) -> np.ndarray:
        return self.origin + np.asarray(x2, dtype=float) @ self.basis

    def project(self, x) -> np.ndarray:
        """In-plane coordinates of the orthogonal projection of ``x``."""
        return (np.asarray(x, dtype=float) - self.origin) @ self.basis.T

    def project_ambient(self, x) -> np.ndarray:
        return self.lift(self.project(x))


def plane_through(points: Sequence[np.ndarray]) -> PlaneMap:
    """Plane through the given points (at most two independent directions).

    ``points[0]`` becomes the origin and ``points[1] - points[0]`` the first
    axis.  When the points are collinear the plane is completed with the
    canonical basis vector of smallest index not parallel to that axis.
    """
    pts = [as_vec(p) for p in points]
    dim = pts[0].size
    if dim == 2:
        return PlaneMap(np.zeros(2), np.eye(2))
    origin = pts[0]
    e1 = pts[1] - origin
    n1 = np.linalg.norm(e1)
    if n1 == 0.0:
        raise InputError("first two points coincide")
    e1 = e1 / n1
    scale = max(float(np.linalg.norm(p - origin)) for p in pts)
    e2 = None
    for p in pts[2:]:
        w = p - origin
        w = w - (w @ e1) * e1
        nw = np.linalg.norm(w)
        if nw > COLLINEAR_TOL * scale:
            e2 = w / nw
            break
    if e2 is None:
        for k in range(dim):
            w = np.zeros(dim)
            w[k] = 1.0
            w = w - (w @ e1) * e1
            nw = np.linalg.norm(w)
            if nw > 1e-6:
                e2 = w / nw
                break
    # a second Gram-Schmidt pass keeps the basis orthonormal to machine precision
    e2 = e2 - (e2 @ e1) * e1
    e2 /= np.linalg.norm(e2)
    return PlaneMap(origin, np.vstack([e1, e2]))


def reduce_to_plane(balls: Sequence[Ball]) -> tuple[list[Ball], PlaneMap]:
    """Map three balls in R^n to three disks in a plane containing the centers.

    Radii are kept and pairwise center distances preserved; the returned
    :class:`PlaneMap` lifts planar points back to R^n.
    """
    if len(balls) != 3:
        raise InputError(f"expected three balls, got {len(balls)}")
    dim = balls[0].dim
    for b in balls:
        if b.dim != dim:
            raise InputError("balls have different dimensions")
    pm = plane_through([b.center for b in balls])
    if dim == 2:
        return list(balls), pm
    disks = [Ball(pm.project(b.center), b.radius) for b in balls]
    return disks, pm


@dataclass(frozen=True, eq=False)
class ConfigurationTriplet:
    """Three balls with pairwise disjoint interiors."""

    balls: tuple[Ball, Ball, Ball]

    def __post_init__(self):
        balls = tuple(self.balls)
        if len(balls) != 3:
            raise InputError(f"a triplet needs exactly three balls, got {len(balls)}")
        check_disjoint(balls)
        object.__setattr__(self, "balls", balls)

    @property
    def dimension(self) -> int:
        return self.balls[0].dim

    @property
    def radii(self) -> tuple[float, float, float]:
        return tuple(b.radius for b in self.balls)

    def __iter__(self):
        return iter(self.balls)

    def __len__(self):
        return 3

    def __getitem__(self, i):
        return self.balls[i]


def check_disjoint(balls: Sequence[Ball], tol: float | None = None) -> None:
    """Raise :class:`InputError` naming the first pair of overlapping balls."""
    tol = TOL if tol is None else tol
    dim = balls[0].dim
    scale = max(b.radius for b in balls)
    if any(b.dim != dim for b in balls):
        raise InputError("balls have different dimensions")
    for i in range(len(balls)):
        for j in range(i + 1, len(balls)):
            d = float(np.linalg.norm(balls[i].center - balls[j].center))
            if d < balls[i].radius + balls[j].radius - tol * scale:
                raise InputError(f"bodies {i} and {j} overlap (center distance {d!r})")


def as_triplet(cfg) -> ConfigurationTriplet:
    if isinstance(cfg, ConfigurationTriplet):
        return cfg
    return ConfigurationTriplet(tuple(cfg))
