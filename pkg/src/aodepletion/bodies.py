"""Convex hard bodies with point distance, support function and rolling radius.

Every shape exposes the same small protocol:

``distance(points)``
    Euclidean distance to the body for an array of points (zero inside).
``support_value(u)`` / ``support(u)``
    Support function ``h(u) = max_{x in C} u.x`` and a maximizing point.
``bounds(delta)``
    Axis-aligned bounding box of the dilation ``C(delta)`` (``None`` if unbounded).
``roll_radius``
    Largest radius of a ball that rolls freely inside the body.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import CapabilityError, InputError
from .geometry import TOL, Ball, as_vec

__all__ = [
    "Ball",
    "HalfSpace",
    "Ellipsoid",
    "ConvexPolygon",
    "RoundedPolygon",
    "rolling_radius",
    "sample_directions",
    "penetration_depth",
    "check_bodies_disjoint",
]


class HalfSpace:
    """The closed half-space ``{x : x.normal <= offset}`` (a hard wall).

    A non-unit normal is rescaled together with the offset, which leaves the
    set unchanged.
    """

    def __init__(self, normal, offset: float):
        n = as_vec(normal)
        norm = float(np.linalg.norm(n))
        if norm == 0.0:
            raise InputError("half-space normal must be nonzero")
        self.normal = n / norm
        self.offset = float(offset) / norm
        if not math.isfinite(self.offset):
            raise InputError("half-space offset must be finite")

    def __repr__(self):
        return f"HalfSpace(normal={self.normal.tolist()}, offset={self.offset!r})"

    @property
    def dim(self) -> int:
        return self.normal.size

    @property
    def roll_radius(self) -> float:
        return math.inf

    def signed_height(self, points) -> np.ndarray:
        """Signed distance to the boundary plane, positive outside the wall."""
        return np.asarray(points, dtype=float) @ self.normal - self.offset

    def distance(self, points) -> np.ndarray:
        return np.maximum(self.signed_height(points), 0.0)

    def scalar_distance(self):
        n = tuple(self.normal.tolist())
        c = self.offset

        def dist(x):
            return max(math.fsum(a * b for a, b in zip(x, n)) - c, 0.0)

        return dist

    def bounds(self, delta: float = 0.0):
        return None


class Ellipsoid:
    """Solid ellipse/ellipsoid ``{c + Q diag(a) y : |y| <= 1}``.

    ``rotation`` is an orthogonal matrix whose columns are the axis
    directions; identity by default.
    """

    def __init__(self, center, semi_axes, rotation=None):
        self.center = as_vec(center)
        a = np.asarray(semi_axes, dtype=float)
        if a.shape != self.center.shape:
            raise InputError("semi_axes must have one entry per dimension")
        if not np.all((a > 0) & np.isfinite(a)):
            raise InputError("semi-axes must be positive and finite")
        self.semi_axes = a
        n = a.size
        q = np.eye(n) if rotation is None else np.asarray(rotation, dtype=float)
        if q.shape != (n, n) or not np.allclose(q.T @ q, np.eye(n), atol=1e-10):
            raise InputError("rotation must be an orthogonal matrix")
        self.rotation = q
        self._shape = q * a  # Q diag(a)

    def __repr__(self):
        return (
            f"Ellipsoid(center={self.center.tolist()}, semi_axes={self.semi_axes.tolist()}, "
            f"rotation={self.rotation.tolist()})"
        )

    @property
    def dim(self) -> int:
        return self.center.size

    @property
    def roll_radius(self) -> float:
        # smallest principal radius of curvature
        return float(self.semi_axes.min() ** 2 / self.semi_axes.max())

    def distance(self, points) -> np.ndarray:
        p = np.asarray(points, dtype=float)
        shape = p.shape[:-1]
        y = np.abs((p.reshape(-1, self.dim) - self.center) @ self.rotation)
        a2 = self.semi_axes**2
        inside = np.sum((y / self.semi_axes) ** 2, axis=1) <= 1.0
        # closest point z = a^2 y / (t + a^2) with t >= 0 the root of
        # F(t) = sum (a y / (t + a^2))^2 - 1, convex and decreasing; Newton
        # from t = 0 approaches the root monotonically from the left.
        t = np.zeros(len(y))
        ay2 = (self.semi_axes * y) ** 2
        for _ in range(100):
            den = t[:, None] + a2
            f = np.sum(ay2 / den**2, axis=1) - 1.0
            fp = -2.0 * np.sum(ay2 / den**3, axis=1)
            step = np.where(inside, 0.0, -f / np.where(fp == 0.0, -1.0, fp))
            t = t + np.maximum(step, 0.0)
            if np.all(np.abs(step) <= 1e-15 * (t + a2.max())):
                break
        z = a2 * y / (t[:, None] + a2)
        d = np.linalg.norm(y - z, axis=1)
        d[inside] = 0.0
        return d.reshape(shape)

    def scalar_distance(self):
        def dist(x):
            return float(self.distance(np.asarray(x, dtype=float)))

        return dist

    def support_value(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        return u @ self.center + np.linalg.norm(u @ self._shape, axis=-1)

    def support(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        w = u @ self._shape
        return self.center + (w / np.linalg.norm(w, axis=-1, keepdims=True)) @ self._shape.T

    def bounds(self, delta: float = 0.0):
        half = np.linalg.norm(self._shape, axis=1) + delta
        return self.center - half, self.center + half


def _polygon_distance(points: np.ndarray, verts: np.ndarray) -> np.ndarray:
    p = np.asarray(points, dtype=float)
    shape = p.shape[:-1]
    p = p.reshape(-1, 2)
    a = verts
    b = np.roll(verts, -1, axis=0)
    e = b - a
    ee = np.einsum("ij,ij->i", e, e)
    ee = np.where(ee == 0.0, 1.0, ee)
    rel = p[:, None, :] - a[None, :, :]
    t = np.clip(np.einsum("mkj,kj->mk", rel, e) / ee, 0.0, 1.0)
    diff = rel - t[..., None] * e[None]
    d = np.sqrt(np.min(np.einsum("mkj,mkj->mk", diff, diff), axis=1))
    cross = e[None, :, 0] * rel[..., 1] - e[None, :, 1] * rel[..., 0]
    inside = np.all(cross >= 0.0, axis=1) if len(verts) >= 3 else np.zeros(len(p), bool)
    d[inside] = 0.0
    return d.reshape(shape)


def _signed_area(verts: np.ndarray) -> float:
    x, y = verts[:, 0], verts[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


class ConvexPolygon:
    """Convex polygon in the plane; vertices are stored counterclockwise."""

    def __init__(self, vertices):
        v = np.asarray(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or len(v) < 3:
            raise InputError("a polygon needs at least three 2D vertices")
        if not np.all(np.isfinite(v)):
            raise InputError("polygon vertices must be finite")
        area = _signed_area(v)
        if area == 0.0:
            raise InputError("polygon has zero area")
        if area < 0:
            v = v[::-1].copy()
        e = np.roll(v, -1, axis=0) - v
        cross = e[:, 0] * np.roll(e, -1, axis=0)[:, 1] - e[:, 1] * np.roll(e, -1, axis=0)[:, 0]
        scale = float(np.max(np.linalg.norm(e, axis=1))) ** 2
        if np.any(cross <= TOL * scale):
            raise InputError("polygon vertices are not in strictly convex position")
        self.vertices = v

    def __repr__(self):
        return f"ConvexPolygon(vertices={self.vertices.tolist()})"

    dim = 2

    @property
    def roll_radius(self) -> float:
        return 0.0

    def distance(self, points) -> np.ndarray:
        return _polygon_distance(points, self.vertices)

    def scalar_distance(self):
        def dist(x):
            return float(_polygon_distance(np.asarray(x, dtype=float), self.vertices))

        return dist

    def support_value(self, u) -> np.ndarray:
        return np.max(np.asarray(u, dtype=float) @ self.vertices.T, axis=-1)

    def support(self, u) -> np.ndarray:
        idx = np.argmax(np.asarray(u, dtype=float) @ self.vertices.T, axis=-1)
        return self.vertices[idx]

    def bounds(self, delta: float = 0.0):
        return self.vertices.min(axis=0) - delta, self.vertices.max(axis=0) + delta

    def edge_normals(self) -> tuple[np.ndarray, np.ndarray]:
        """Outward unit normals and offsets ``n.x <= h`` of all edges."""
        e = np.roll(self.vertices, -1, axis=0) - self.vertices
        n = np.column_stack([e[:, 1], -e[:, 0]])
        n /= np.linalg.norm(n, axis=1, keepdims=True)
        return n, np.einsum("ij,ij->i", n, self.vertices)


def _clip(poly: np.ndarray, n: np.ndarray, h: float) -> np.ndarray:
    """Sutherland-Hodgman clip of a convex polygon by ``n.x <= h``."""
    out = []
    m = len(poly)
    for i in range(m):
        a, b = poly[i], poly[(i + 1) % m]
        fa, fb = a @ n - h, b @ n - h
        if fa <= 0:
            out.append(a)
        if (fa < 0 < fb) or (fb < 0 < fa):
            out.append(a + (b - a) * (fa / (fa - fb)))
    return np.array(out).reshape(-1, 2)


class RoundedPolygon:
    """Convex polygon with corners rounded to radius ``rho``.

    This is the morphological opening: the polygon eroded by ``rho`` (the
    *core*) and dilated back by ``rho``.  It is contained in the polygon and
    its rolling radius is ``rho``.
    """

    def __init__(self, vertices, rho: float):
        self.polygon = vertices if isinstance(vertices, ConvexPolygon) else ConvexPolygon(vertices)
        rho = float(rho)
        if not (rho > 0 and math.isfinite(rho)):
            raise InputError("rounding radius must be positive and finite")
        self.rho = rho
        normals, offsets = self.polygon.edge_normals()
        lo, hi = self.polygon.bounds()
        core = np.array([[lo[0], lo[1]], [hi[0], lo[1]], [hi[0], hi[1]], [lo[0], hi[1]]])
        for n, h in zip(normals, offsets):
            core = _clip(core, n, h - rho)
            if len(core) == 0:
                raise InputError(f"rounding radius {rho} exceeds the polygon inradius")
        self.core = _simplify_core(core, TOL * float(np.max(hi - lo)))

    def __repr__(self):
        return f"RoundedPolygon(vertices={self.polygon.vertices.tolist()}, rho={self.rho!r})"

    dim = 2

    @property
    def vertices(self) -> np.ndarray:
        return self.polygon.vertices

    @property
    def roll_radius(self) -> float:
        return self.rho

    def distance(self, points) -> np.ndarray:
        if len(self.core) < 3:
            p = np.asarray(points, dtype=float)
            d = np.min(np.linalg.norm(p[..., None, :] - self.core, axis=-1), axis=-1)
            if len(self.core) == 2:
                d = _segment_distance(p, self.core[0], self.core[1])
        else:
            d = _polygon_distance(points, self.core)
        return np.maximum(d - self.rho, 0.0)

    def scalar_distance(self):
        def dist(x):
            return float(self.distance(np.asarray(x, dtype=float)))

        return dist

    def support_value(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        return np.max(u @ self.core.T, axis=-1) + self.rho * np.linalg.norm(u, axis=-1)

    def support(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        idx = np.argmax(u @ self.core.T, axis=-1)
        return self.core[idx] + self.rho * u / np.linalg.norm(u, axis=-1, keepdims=True)

    def bounds(self, delta: float = 0.0):
        return self.core.min(axis=0) - self.rho - delta, self.core.max(axis=0) + self.rho + delta


def _simplify_core(core: np.ndarray, eps: float) -> np.ndarray:
    """Drop repeated points; a zero-area core becomes its two extreme points."""
    keep = [core[0]]
    for q in core[1:]:
        if np.linalg.norm(q - keep[-1]) > eps:
            keep.append(q)
    if len(keep) > 1 and np.linalg.norm(keep[-1] - keep[0]) <= eps:
        keep.pop()
    pts = np.array(keep)
    if len(pts) >= 3 and abs(_signed_area(pts)) > eps * eps:
        return pts
    if len(pts) == 1:
        return pts
    d = np.linalg.norm(pts[:, None] - pts[None], axis=-1)
    i, j = np.unravel_index(np.argmax(d), d.shape)
    return pts[[i, j]] if d[i, j] > eps else pts[:1]


def _segment_distance(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    e = b - a
    t = np.clip(((p - a) @ e) / (e @ e), 0.0, 1.0)
    return np.linalg.norm(p - a - t[..., None] * e, axis=-1)


def rolling_radius(body) -> float:
    """Rolling radius of a supported shape (``inf`` for a half-space)."""
    if isinstance(body, (Ball, HalfSpace, Ellipsoid, ConvexPolygon, RoundedPolygon)):
        return float(body.roll_radius)
    raise CapabilityError(f"rolling radius not available for {type(body).__name__}")


def sample_directions(dim: int, n: int) -> np.ndarray:
    """Deterministic, nearly uniform unit vectors (circle or Fibonacci sphere)."""
    if dim == 2:
        t = 2.0 * np.pi * np.arange(n) / n
        return np.column_stack([np.cos(t), np.sin(t)])
    if dim == 3:
        k = np.arange(n) + 0.5
        z = 1.0 - 2.0 * k / n
        phi = np.pi * (3.0 - math.sqrt(5.0)) * k
        s = np.sqrt(1.0 - z * z)
        return np.column_stack([s * np.cos(phi), s * np.sin(phi), z])
    rng = np.random.default_rng(12345)
    u = rng.standard_normal((n, dim))
    return u / np.linalg.norm(u, axis=1, keepdims=True)


def penetration_depth(a, b, n_dirs: int | None = None) -> float:
    """``min_u h_a(u) + h_b(-u)`` over unit ``u``.

    Positive values mean the interiors overlap by that depth; zero or
    negative means the bodies are separated (or touching).  Exact for pairs
    of balls and for anything against a half-space; otherwise the minimum is
    taken over a dense direction set and refined locally.
    """
    if isinstance(a, HalfSpace) and isinstance(b, HalfSpace):
        if np.allclose(a.normal, -b.normal, atol=1e-12):
            return a.offset + b.offset
        return math.inf
    if isinstance(b, HalfSpace):
        a, b = b, a
    if isinstance(a, HalfSpace):
        return float(a.offset + b.support_value(-a.normal))
    if isinstance(a, Ball) and isinstance(b, Ball):
        return a.radius + b.radius - float(np.linalg.norm(a.center - b.center))
    dim = a.dim
    n_dirs = n_dirs or (4096 if dim == 2 else 16384)
    u = sample_directions(dim, n_dirs)
    vals = a.support_value(u) + b.support_value(-u)
    best = int(np.argmin(vals))
    if dim == 2:
        t0 = 2.0 * np.pi * best / n_dirs
        step = 2.0 * np.pi / n_dirs

        def f(t):
            w = np.array([math.cos(t), math.sin(t)])
            return float(a.support_value(w) + b.support_value(-w))

        res = minimize_scalar(f, bounds=(t0 - step, t0 + step), method="bounded",
                              options={"xatol": 1e-13})
        return min(float(vals[best]), float(res.fun))
    return float(vals[best])


def check_bodies_disjoint(bodies, tol: float | None = None) -> None:
    """Raise :class:`InputError` naming the first pair whose interiors overlap."""
    tol = TOL if tol is None else tol
    scale = max([1.0] + [_extent(b) for b in bodies if not isinstance(b, HalfSpace)])
    for i in range(len(bodies)):
        for j in range(i + 1, len(bodies)):
            if bodies[i].dim != bodies[j].dim:
                raise InputError(f"bodies {i} and {j} have different dimensions")
            depth = penetration_depth(bodies[i], bodies[j])
            if depth > tol * scale:
                raise InputError(f"bodies {i} and {j} overlap (penetration depth {depth:.3g})")


def _extent(body) -> float:
    lo, hi = body.bounds(0.0)
    return 0.5 * float(np.max(hi - lo))
