"""Brute-force ground truth, independent of the closed-form machinery.

``minimax_delta`` minimizes ``g(x) = max_i dist(x, C_i)`` directly; its
minimum value is by definition the smallest shell radius at which all the
dilated bodies share a point.  ``g`` is convex, so minimizing it one
coordinate at a time by nested golden-section searches (each partial
minimum of a convex function is again convex) is derivative-free and cannot
get stuck at the kinks where several distances tie.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bodies import HalfSpace
from .errors import CapabilityError, InputError
from .geometry import Ball

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True, eq=False)
class MinimaxResult:
    value: float
    argmin: np.ndarray
    iterations: int
    converged: bool


@dataclass(frozen=True)
class UnionVolumeEstimate:
    volume: float
    std_error: float
    sample_count: int
    seed: int
    hits: int = 0


def _compact(bodies):
    return [b for b in bodies if not isinstance(b, HalfSpace)]


def _length_scale(bodies) -> float:
    s = 0.0
    for b in _compact(bodies):
        lo, hi = b.bounds(0.0)
        s = max(s, 0.5 * float(np.max(hi - lo)))
    return s or 1.0


def _max_distance_fn(bodies):
    """Scalar ``x -> max_i dist(x, C_i)``, with a fast path for balls."""
    if all(isinstance(b, Ball) for b in bodies):
        data = [(tuple(b.center.tolist()), b.radius) for b in bodies]
        dist = math.dist

        def g(x):
            m = 0.0
            for c, r in data:
                v = dist(x, c) - r
                if v > m:
                    m = v
            return m

        return g
    fs = [b.scalar_distance() for b in bodies]

    def g(x):
        return max(f(x) for f in fs)

    return g


def search_box(bodies, start=None) -> tuple[np.ndarray, np.ndarray]:
    """Box guaranteed to contain a minimizer of ``max_i dist(x, C_i)``.

    For compact bodies the minimizer lies in their convex hull (projecting
    onto the hull shortens every distance).  With a half-space present the
    compact bounding box is widened by ``g`` at its center, since farther
    points are already worse than that center.
    """
    compact = _compact(bodies)
    if not compact:
        raise InputError("need at least one bounded body")
    los, his = zip(*(b.bounds(0.0) for b in compact))
    lo, hi = np.min(los, axis=0), np.max(his, axis=0)
    if len(compact) < len(bodies):
        mid = 0.5 * (lo + hi)
        g0 = max(float(b.distance(mid)) for b in bodies)
        lo, hi = lo - g0, hi + g0
    if start is not None:
        s = np.asarray(start, dtype=float)
        lo, hi = np.minimum(lo, s), np.maximum(hi, s)
    return lo, hi


def minimax_delta(bodies, start=None, xtol: float = 1e-11) -> MinimaxResult:
    """Minimum over ``x`` of the largest distance from ``x`` to the bodies.

    ``xtol`` is relative to the body length scale.  ``converged`` is False
    when the minimizer ends up on the edge of the search box.
    """
    if len(bodies) < 2:
        raise InputError("need at least two bodies")
    dim = bodies[0].dim
    g = _max_distance_fn(bodies)
    lo, hi = search_box(bodies, start)
    tol = xtol * _length_scale(bodies)
    count = [0]

    def golden(f, a, b):
        c = b - _INVPHI * (b - a)
        d = a + _INVPHI * (b - a)
        fc, fd = f(c), f(d)
        while b - a > tol:
            if fc[0] <= fd[0]:
                b, d, fd = d, c, fc
                c = b - _INVPHI * (b - a)
                fc = f(c)
            else:
                a, c, fc = c, d, fd
                d = a + _INVPHI * (b - a)
                fd = f(d)
        return min((fc, fd, f(0.5 * (a + b))), key=lambda r: r[0])

    def solve(k, prefix):
        """Minimize over coordinates k.. with the first k fixed."""
        if k == dim - 1:
            def f(t):
                x = prefix + (t,)
                count[0] += 1
                return g(x), x
        else:
            def f(t):
                return solve(k + 1, prefix + (t,))
        return golden(f, float(lo[k]), float(hi[k]))

    value, x = solve(0, ())
    x = np.array(x)
    edge = np.any(np.minimum(np.abs(x - lo), np.abs(hi - x)) <= 2 * tol) and np.any(hi > lo)
    return MinimaxResult(float(value), x, count[0], not bool(edge and value > 0))


def _grid_region(bodies, delta):
    boxes = [b.bounds(delta) for b in _compact(bodies)]
    lo = np.max([bx[0] for bx in boxes], axis=0)
    hi = np.min([bx[1] for bx in boxes], axis=0)
    return lo, hi


def grid_common_point(bodies, delta: float, h: float, max_points: int = 1 << 18):
    """First grid point lying in every dilation, or ``None``.

    The grid spacing is coarsened if needed to stay under ``max_points``.
    """
    lo, hi = _grid_region(bodies, delta)
    if np.any(hi < lo):
        return None
    dim = lo.size
    span = hi - lo
    cells = max(float(np.prod(np.maximum(span / h, 1.0))), 1.0)
    if cells > max_points:
        h *= (cells / max_points) ** (1.0 / dim)
    axes = [np.arange(lo[i], hi[i] + 0.5 * h, h) if span[i] > 0 else np.array([lo[i]])
            for i in range(dim)]
    pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, dim)
    mask = np.ones(len(pts), bool)
    for b in bodies:
        idx = np.flatnonzero(mask)
        if idx.size == 0:
            return None
        mask[idx] = b.distance(pts[idx]) <= delta
    hits = np.flatnonzero(mask)
    return pts[hits[0]] if hits.size else None


def triple_empty(bodies, delta: float, grid_resolution: float | None = None,
                 max_grid_points: int = 1 << 18) -> bool:
    """Whether the dilated bodies have no common point.

    A grid search (one-sided: it can miss thin intersections) is combined
    with the minimax value, which must exceed ``delta``.
    """
    if delta < 0:
        raise InputError("delta must be nonnegative")
    h = grid_resolution or 1e-3 * _length_scale(bodies)
    if grid_common_point(bodies, delta, h, max_grid_points) is not None:
        return False
    return minimax_delta(bodies).value > delta


def union_volume_mc(bodies, delta: float, n_samples: int = 10**6, seed: int = 0,
                    block_size: int = 1 << 16, workers: int = 1) -> UnionVolumeEstimate:
    """Monte Carlo volume of the union of the dilated bodies.

    Uniform samples in the bounding box of all dilations (widened by one
    grid step).  Each block of samples has its own stream spawned from
    ``seed`` and the counts are summed in block order, so the estimate does
    not depend on ``workers``.
    """
    if n_samples < 10**4:
        raise InputError("n_samples must be at least 10^4")
    if any(isinstance(b, HalfSpace) for b in bodies):
        raise InputError("union volume needs bounded bodies")
    los, his = zip(*(b.bounds(delta) for b in bodies))
    h = 1e-3 * _length_scale(bodies)
    lo, hi = np.min(los, axis=0) - h, np.max(his, axis=0) + h
    box = float(np.prod(hi - lo))
    if not box > 0:
        raise InputError("degenerate bounding box")
    sizes = [block_size] * (n_samples // block_size)
    if n_samples % block_size:
        sizes.append(n_samples % block_size)
    streams = np.random.SeedSequence(seed).spawn(len(sizes))

    def count(i):
        rng = np.random.Generator(np.random.PCG64(streams[i]))
        pts = rng.uniform(lo, hi, size=(sizes[i], lo.size))
        inside = np.zeros(len(pts), bool)
        for b in bodies:
            idx = np.flatnonzero(~inside)
            inside[idx] = b.distance(pts[idx]) <= delta
        return int(inside.sum())

    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            counts = list(ex.map(count, range(len(sizes))))
    else:
        counts = [count(i) for i in range(len(sizes))]
    hits = sum(counts)
    p = hits / n_samples
    return UnionVolumeEstimate(box * p, box * math.sqrt(p * (1.0 - p) / n_samples),
                               n_samples, seed, hits)


def ball_volume(radius: float, dim: int) -> float:
    """Volume of a ``dim``-dimensional ball."""
    return math.pi ** (dim / 2) / math.gamma(dim / 2 + 1) * radius**dim


def lens_overlap(r1: float, r2: float, d: float, dim: int) -> float:
    """Overlap area (2D) or volume (3D) of two balls at center distance ``d``."""
    if dim not in (2, 3):
        raise CapabilityError(f"analytic overlap only in 2 or 3 dimensions, not {dim}")
    if d >= r1 + r2:
        return 0.0
    if d <= abs(r1 - r2):
        return ball_volume(min(r1, r2), dim)
    if dim == 2:
        a1 = math.acos(min(1.0, (d * d + r1 * r1 - r2 * r2) / (2 * d * r1)))
        a2 = math.acos(min(1.0, (d * d + r2 * r2 - r1 * r1) / (2 * d * r2)))
        kite = 0.5 * math.sqrt(max((-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2), 0.0))
        return r1 * r1 * a1 + r2 * r2 * a2 - kite
    # two spherical caps of heights h1, h2
    h1 = (r2 - r1 + d) * (r2 + r1 - d) / (2.0 * d)
    h2 = (r1 - r2 + d) * (r1 + r2 - d) / (2.0 * d)
    return math.pi / 3.0 * (h1 * h1 * (3 * r1 - h1) + h2 * h2 * (3 * r2 - h2))


def pairwise_lens_area(b1: Ball, b2: Ball, delta: float) -> float:
    """Exact overlap of the two dilated balls (area in 2D, volume in 3D)."""
    d = float(np.linalg.norm(b1.center - b2.center))
    return lens_overlap(b1.radius + delta, b2.radius + delta, d, b1.dim)


def truncated_inclusion_exclusion(balls, delta: float) -> float:
    """Sum of single volumes minus pairwise overlaps of the dilated balls."""
    dim = balls[0].dim
    total = sum(ball_volume(b.radius + delta, dim) for b in balls)
    for i in range(len(balls)):
        for j in range(i + 1, len(balls)):
            total -= pairwise_lens_area(balls[i], balls[j], delta)
    return total
