"""Random non-overlapping triplets of balls."""

from __future__ import annotations

import math

import numpy as np

from .errors import NumericalError
from .geometry import Ball, ConfigurationTriplet


def random_rotation(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-distributed rotation matrix (QR of a Gaussian matrix)."""
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def place_triangle(sides) -> np.ndarray:
    """Planar corners with ``sides[i]`` opposite corner ``i``; corner 0 at the
    origin and corner 1 on the positive x axis."""
    l1, l2, l3 = sides
    x = (l2 * l2 + l3 * l3 - l1 * l1) / (2.0 * l3)
    y = math.sqrt(max(l2 * l2 - x * x, 0.0))
    return np.array([[0.0, 0.0], [l3, 0.0], [x, y]])


def random_radii(rng: np.random.Generator, radius_range) -> np.ndarray:
    lo, hi = radius_range
    if lo == hi:
        return np.full(3, float(lo))
    return np.exp(rng.uniform(math.log(lo), math.log(hi), 3))


def random_config(rng: np.random.Generator, radius_range=(0.1, 10.0), gap_range=(0.0, 1.0),
                  dimension: int = 2, max_tries: int = 1000) -> ConfigurationTriplet:
    """Three balls with log-uniform radii and side lengths ``R_j + R_k + gap``.

    Triangles violating the triangle inequality are resampled.  The result
    is randomly rotated and translated in ``dimension`` dimensions.
    """
    for _ in range(max_tries):
        radii = random_radii(rng, radius_range)
        gaps = rng.uniform(gap_range[0], gap_range[1], 3)
        sides = [radii[(i + 1) % 3] + radii[(i + 2) % 3] + gaps[i] for i in range(3)]
        l1, l2, l3 = sides
        if l1 < l2 + l3 and l2 < l1 + l3 and l3 < l1 + l2:
            break
    else:
        raise NumericalError("could not sample a valid triangle")
    pts = np.zeros((3, dimension))
    pts[:, :2] = place_triangle(sides)
    q = random_rotation(rng, dimension)
    shift = rng.uniform(-1.0, 1.0, dimension)
    pts = pts @ q.T + shift
    return ConfigurationTriplet(tuple(Ball(p, r) for p, r in zip(pts, radii)))


def contact_config(radii, dimension: int = 2) -> ConfigurationTriplet:
    """Three balls in mutual contact, unrotated."""
    r = [float(x) for x in radii]
    sides = [r[1] + r[2], r[0] + r[2], r[0] + r[1]]
    pts = np.zeros((3, dimension))
    pts[:, :2] = place_triangle(sides)
    return ConfigurationTriplet(tuple(Ball(p, ri) for p, ri in zip(pts, r)))


def equal_contact_config(radius: float = 1.0, dimension: int = 2) -> ConfigurationTriplet:
    """Equilateral contact triplet with exact coordinates ``(0,0), (2R,0), (R, sqrt(3) R)``."""
    pts = np.zeros((3, dimension))
    pts[1, 0] = 2.0 * radius
    pts[2, 0] = radius
    pts[2, 1] = math.sqrt(3.0) * radius
    return ConfigurationTriplet(tuple(Ball(p, radius) for p in pts))
