"""Maximal shell radius for three balls, or two balls and a hard wall.

Growing the shell radius from zero, the first common point of the three
dilated balls either sits on a side of the triangle of centers (the two
dilations realizing the largest pairwise threshold touch there) or it is the
center of the externally tangent Apollonius circle lying inside the
triangle.  :func:`delta_max` decides between the two and returns the
witness point.
"""

from __future__ import annotations

import enum
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bodies import HalfSpace
from .errors import DegenerateInputError, InputError, NumericalError
from .geometry import (
    TOL,
    Ball,
    ConfigurationTriplet,
    as_triplet,
    barycentric,
    check_disjoint,
    plane_through,
    reduce_to_plane,
    triangle_from_centers,
)

log = logging.getLogger(__name__)

#: Prefactor of the critical shell radius for equal balls in contact.
# 2/sqrt(3) - 1, correctly rounded; the naive expression is 1.6e-16 high.
CRITICAL_RATIO = 0.15470053837925152

EXTERNAL = (1, 1, 1)
ALL_SIGNS = tuple(itertools.product((1, -1), repeat=3))


class CaseTag(enum.Enum):
    BOUNDARY_CONTACT = "BoundaryContact"
    APOLLONIUS_INTERIOR = "ApolloniusInterior"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class PairwiseThresholds:
    """Dilations at which the two balls opposite each corner first touch.

    ``values[i]`` belongs to the pair opposite corner ``i``; ``order`` lists
    corner indices so that ``values[order]`` is ascending.
    """

    values: tuple[float, float, float]
    order: tuple[int, int, int]

    @property
    def sorted(self) -> tuple[float, float, float]:
        return tuple(self.values[i] for i in self.order)

    @property
    def largest(self) -> float:
        return max(self.values)


@dataclass(frozen=True, eq=False)
class DeltaMaxResult:
    delta_max: float
    witness_point: np.ndarray
    case_tag: CaseTag
    apollonius_radius: float | None = None
    degenerate: bool = False
    thresholds: PairwiseThresholds | None = None

    def __repr__(self):
        return (
            f"DeltaMaxResult(delta_max={self.delta_max!r}, case_tag={self.case_tag}, "
            f"witness_point={self.witness_point.tolist()}, degenerate={self.degenerate})"
        )


@dataclass(frozen=True)
class ApolloniusSolution:
    center: np.ndarray
    radius: float
    signs: tuple[int, int, int]


@dataclass(frozen=True)
class AngleSplit:
    """Angles at the tangency point ``p`` for one corner of the triangle.

    ``alpha_1_2`` and ``alpha_1_3`` split the corner angle along the ray to
    ``p``; ``beta_1`` is the angle at ``p`` opposite that corner.
    """

    alpha_1_2: float
    alpha_1_3: float
    beta_1: float
    corner: int = 0


def _scale(balls: Sequence[Ball]) -> float:
    return max(b.radius for b in balls)


def pairwise_thresholds(cfg, tol: float | None = None) -> PairwiseThresholds:
    """Half the gap between each pair of balls.

    Gaps within ``tol`` times the largest radius count as contact and are
    clamped to zero.
    """
    tol = TOL if tol is None else tol
    balls = as_triplet(cfg).balls
    scale = _scale(balls)
    vals = []
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        ell = float(np.linalg.norm(balls[j].center - balls[k].center))
        gap = ell - balls[j].radius - balls[k].radius
        if gap < -tol * scale:
            raise InputError(f"bodies {min(j, k)} and {max(j, k)} overlap")
        vals.append(0.5 * gap if gap >= tol * scale else 0.0)
    order = tuple(sorted(range(3), key=lambda i: (vals[i], i)))
    return PairwiseThresholds(tuple(vals), order)


def descartes_contact_radius(r1: float, r2: float, r3: float) -> float:
    """Radius of the inner Soddy circle of three mutually tangent circles."""
    for r in (r1, r2, r3):
        if not (r > 0 and math.isfinite(r)):
            raise InputError(f"radii must be positive and finite, got {r}")
    k1, k2, k3 = 1.0 / r1, 1.0 / r2, 1.0 / r3
    return 1.0 / (k1 + k2 + k3 + 2.0 * math.sqrt(k1 * k2 + k2 * k3 + k1 * k3))


def _quadratic_roots(a: float, b: float, c: float, scale: float) -> list[float]:
    """Real roots of ``a x^2 + b x + c``; a tiny negative discriminant counts as zero."""
    if abs(a) <= 1e-14 * max(abs(b), abs(c) / scale, 1.0):
        return [] if b == 0.0 else [-c / b]
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        if disc < -1e-12 * (b * b + abs(4.0 * a * c)):
            return []
        disc = 0.0
    q = -0.5 * (b + math.copysign(math.sqrt(disc), b))
    if q == 0.0:
        return [0.0]
    return [q / a, c / q]


def _polish(centers, radii, signs, p, delta, steps=4):
    """Newton steps on |p - r_i|^2 = (R_i + s_i delta)^2, kept only if they help."""
    c = np.asarray(centers, dtype=float)
    r = np.asarray(radii, dtype=float)
    s = np.asarray(signs, dtype=float)
    floor = 1e-15 * float(np.max(r + np.abs(delta))) ** 2

    def resid(p, d):
        diff = p - c
        return np.einsum("ij,ij->i", diff, diff) - (r + s * d) ** 2

    f = resid(p, delta)
    nf = float(np.abs(f).max())
    for _ in range(steps):
        if nf <= floor:
            break
        jac = np.empty((3, 3))
        jac[:, :2] = 2.0 * (p - c)
        jac[:, 2] = -2.0 * s * (r + s * delta)
        try:
            step = np.linalg.solve(jac, -f)
        except np.linalg.LinAlgError:
            break
        p2, d2 = p + step[:2], delta + step[2]
        f2 = resid(p2, d2)
        nf2 = float(np.abs(f2).max())
        if nf2 >= nf:
            break
        p, delta, f, nf = p2, d2, f2, nf2
    return p, delta


def apollonius_solve(cfg, signs=(EXTERNAL,)) -> list[ApolloniusSolution]:
    """Circles tangent to three disks, for each requested sign pattern.

    A solution with signs ``s`` satisfies ``|p - r_i| = R_i + s_i * radius``
    with all right-hand sides positive; ``(1, 1, 1)`` is external tangency.
    Subtracting the first tangency equation from the other two gives a
    linear system for ``p`` in terms of the radius, and substituting back
    leaves one quadratic.  Pass ``signs="all"`` for every pattern.
    """
    balls = as_triplet(cfg).balls
    if balls[0].dim != 2:
        raise InputError("apollonius_solve works on disks; reduce the configuration to a plane first")
    if signs == "all":
        signs = ALL_SIGNS
    origin = balls[0].center
    q = [b.center - origin for b in balls]
    radii = [b.radius for b in balls]
    m = 2.0 * np.array([q[1], q[2]])
    size = float(np.linalg.norm(q[1]) * np.linalg.norm(q[2]))
    if abs(np.linalg.det(m)) <= 4.0 * 1e-12 * size:
        raise DegenerateInputError("collinear centers: use the collinear path of delta_max")
    out = []
    for s in signs:
        s = tuple(int(x) for x in s)
        u = np.array([q[i] @ q[i] + radii[0] ** 2 - radii[i] ** 2 for i in (1, 2)])
        v = np.array([2.0 * (s[0] * radii[0] - s[i] * radii[i]) for i in (1, 2)])
        a = np.linalg.solve(m, u)
        b = np.linalg.solve(m, v)
        qa = float(b @ b) - 1.0
        qb = 2.0 * (float(a @ b) - s[0] * radii[0])
        qc = float(a @ a) - radii[0] ** 2
        for d in _quadratic_roots(qa, qb, qc, max(radii) ** 2):
            p, d = _polish([np.zeros(2), q[1], q[2]], radii, s, a + b * d, d)
            if d <= 0.0 or any(r + si * d <= 0.0 for r, si in zip(radii, s)):
                continue
            out.append(ApolloniusSolution(origin + p, float(d), s))
    return out


def _boundary_candidate(balls, thr: PairwiseThresholds, tol: float):
    """Contact point of the pair realizing the largest threshold, if it lies
    in the third dilation (pairs tried in lexicographic order on ties)."""
    d3 = thr.largest
    scale = _scale(balls)
    pairs = sorted(
        ((min(j, k), max(j, k)), i)
        for i in range(3)
        for j, k in [((i + 1) % 3, (i + 2) % 3)]
        if thr.values[i] >= d3 - tol * scale
    )
    for (i, j), k in pairs:
        ri, rj = balls[i].center, balls[j].center
        ell = float(np.linalg.norm(rj - ri))
        p = ri + (balls[i].radius + d3) * (rj - ri) / ell
        if np.linalg.norm(p - balls[k].center) <= balls[k].radius + d3 + tol * scale:
            return p
    return None


def _collinear_delta_max(balls, tol: float):
    """Exact answer for collinear centers via the 1D interval picture."""
    pm = plane_through([b.center for b in balls])
    axis = pm.basis[0]
    t = [float((b.center - pm.origin) @ axis) for b in balls]
    lo = max(ti - b.radius for ti, b in zip(t, balls))
    hi = min(ti + b.radius for ti, b in zip(t, balls))
    delta = max(0.5 * (lo - hi), 0.0)
    witness = pm.origin + 0.5 * (lo + hi) * axis
    return delta, witness


def delta_max(cfg, tol: float | None = None) -> DeltaMaxResult:
    """Largest shell radius for which the three dilated balls share no point
    in their interiors, i.e. the smallest one with a common point.

    Works in any dimension by first reducing to the plane of the centers.
    """
    tol = TOL if tol is None else tol
    cfg = as_triplet(cfg)
    disks, pm = reduce_to_plane(cfg.balls)
    thr = pairwise_thresholds(disks, tol)
    tri = triangle_from_centers(*(b.center for b in disks))
    p = _boundary_candidate(disks, thr, tol)
    if p is not None:
        return DeltaMaxResult(thr.largest, pm.lift(p), CaseTag.BOUNDARY_CONTACT,
                              degenerate=tri.collinear, thresholds=thr)
    if tri.collinear:
        d, w = _collinear_delta_max(cfg.balls, tol)
        log.debug("collinear centers resolved by interval reduction: %r", d)
        return DeltaMaxResult(d, w, CaseTag.BOUNDARY_CONTACT, degenerate=True, thresholds=thr)
    sols = apollonius_solve(disks)
    inside = []
    for s in sols:
        bc = barycentric(s.center, *(b.center for b in disks))
        if np.all(bc >= -1e-9) and s.radius >= thr.largest - tol * _scale(disks):
            inside.append(s)
    if not inside:
        raise NumericalError(
            "no boundary contact and no externally tangent circle inside the triangle"
        )
    best = min(inside, key=lambda s: s.radius)
    return DeltaMaxResult(best.radius, pm.lift(best.center), CaseTag.APOLLONIUS_INTERIOR,
                          apollonius_radius=best.radius, thresholds=thr)


# --- angle relations -------------------------------------------------------


def _clamped_acos(x: float) -> float:
    if x > 1.0 + 1e-9 or x < -1.0 - 1e-9:
        raise NumericalError(f"arccos argument {x!r} outside [-1, 1]")
    return math.acos(min(1.0, max(-1.0, x)))


def tangent_angle(ell: float, r_near: float, r_far: float, delta: float) -> float:
    """Angle at the near center between the side of length ``ell`` and the
    ray to a point at distances ``r_near + delta`` and ``r_far + delta``
    from the two ends (cosine rule)."""
    a = r_near + delta
    b = r_far + delta
    return _clamped_acos((ell * ell + a * a - b * b) / (2.0 * ell * a))


def _corner_data(disks, corner: int):
    j, k = (corner + 1) % 3, (corner + 2) % 3
    c = disks[corner].center
    ell_j = float(np.linalg.norm(disks[k].center - c))  # side to corner k
    ell_k = float(np.linalg.norm(disks[j].center - c))  # side to corner j
    return j, k, ell_j, ell_k


def corner_angle_of_delta(cfg, delta: float, corner: int = 0) -> float:
    """Corner angle that puts the triple tangency point at shell radius ``delta``.

    Sum of the two split angles; strictly increasing in ``delta`` above the
    thresholds of the two sides adjacent to the corner.
    """
    disks, _ = reduce_to_plane(as_triplet(cfg).balls)
    j, k, ell_j, ell_k = _corner_data(disks, corner)
    r = disks[corner].radius
    return tangent_angle(ell_k, r, disks[j].radius, delta) + tangent_angle(
        ell_j, r, disks[k].radius, delta
    )


def delta_star_by_bisection(cfg, bracket=None, corner: int = 0, tol: float | None = None,
                            max_expand: int = 200) -> float:
    """Radius of the interior tangent circle from the corner angle equation.

    Bisection on the increasing map ``delta -> corner_angle_of_delta``; an
    independent check on :func:`apollonius_solve`.  The lower bracket end
    defaults to the larger threshold of the two sides adjacent to ``corner``
    and is returned as is when the angle already matches there.
    """
    tol = TOL if tol is None else tol
    cfg = as_triplet(cfg)
    disks, _ = reduce_to_plane(cfg.balls)
    thr = pairwise_thresholds(disks, tol)
    j, k, _, _ = _corner_data(disks, corner)
    target = triangle_from_centers(*(b.center for b in disks)).angles[corner]
    if bracket is None:
        lo = max(thr.values[j], thr.values[k])
        hi = max(2.0 * lo, _scale(disks))
    else:
        lo, hi = (float(x) for x in bracket)

    def f(d):
        return corner_angle_of_delta(disks, d, corner) - target

    flo = f(lo)
    if flo >= 0.0:
        return lo
    n = 0
    while f(hi) < 0.0:
        lo, hi = hi, 2.0 * hi
        n += 1
        if n > max_expand:
            raise NumericalError("corner angle equation has no root; not an interior case")
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _angle_at(vertex, a, b) -> float:
    u, v = a - vertex, b - vertex
    c = float(u @ v) / (np.linalg.norm(u) * np.linalg.norm(v))
    return math.acos(min(1.0, max(-1.0, c)))


def angle_split(cfg, witness, corner: int = 0) -> AngleSplit:
    """Angles formed by the witness point ``p`` relative to ``corner``."""
    balls = as_triplet(cfg).balls
    disks, pm = reduce_to_plane(balls)
    p = pm.project(np.asarray(witness, dtype=float))
    j, k = (corner + 1) % 3, (corner + 2) % 3
    r = [d.center for d in disks]
    return AngleSplit(
        alpha_1_2=_angle_at(r[corner], r[j], p),
        alpha_1_3=_angle_at(r[corner], r[k], p),
        beta_1=_angle_at(p, r[j], r[k]),
        corner=corner,
    )


# --- hard wall -------------------------------------------------------------


def _wall_frame(b1: Ball, b2: Ball, wall: HalfSpace):
    """2D coordinates (transverse, height above the wall) for both balls."""
    n = wall.normal
    h = [float(b.center @ n - wall.offset) for b in (b1, b2)]
    t = b2.center - b1.center
    t = t - (t @ n) * n
    nt = float(np.linalg.norm(t))
    if nt <= 1e-12 * max(b1.radius, b2.radius):
        t = np.zeros_like(n)
        k = int(np.argmin(np.abs(n)))
        t[k] = 1.0
        t = t - (t @ n) * n
        nt = float(np.linalg.norm(t))
    t = t / nt
    base = b1.center - h[0] * n  # foot of ball 1 on the wall plane
    v = [0.0, float((b2.center - base) @ t)]

    def lift(x):
        return base + x[0] * t + x[1] * n

    return v, h, lift


def solve_wall(ball1: Ball, ball2: Ball, wall: HalfSpace, tol: float | None = None) -> DeltaMaxResult:
    """Maximal shell radius for two balls next to a hard wall, with witness.

    The wall occupies ``x.n <= c``; both balls must lie on the other side.
    The wall enters as a ball of infinite radius: its threshold with ball
    ``i`` is half the ball's gap to the wall, and tangency to the dilated
    wall is the linear condition ``height(p) = delta``.
    """
    tol = TOL if tol is None else tol
    if ball1.dim != wall.dim or ball2.dim != wall.dim:
        raise InputError("balls and wall have different dimensions")
    check_disjoint([ball1, ball2], tol)
    scale = max(ball1.radius, ball2.radius)
    v, h, lift = _wall_frame(ball1, ball2, wall)
    rad = [ball1.radius, ball2.radius]
    gaps = [h[i] - rad[i] for i in range(2)]
    for i, g in enumerate(gaps):
        if g < -tol * scale:
            raise InputError(f"ball {i} crosses the wall")
    gaps = [g if g >= tol * scale else 0.0 for g in gaps]
    ell = math.hypot(v[1] - v[0], h[1] - h[0])
    pair_gap = ell - rad[0] - rad[1]
    thr = {
        (0, 1): 0.5 * pair_gap if pair_gap >= tol * scale else 0.0,
        (0, "w"): 0.5 * gaps[0],
        (1, "w"): 0.5 * gaps[1],
    }
    d3 = max(thr.values())
    c = [np.array([v[i], h[i]]) for i in range(2)]

    def in_all(p, d):
        slack = tol * scale
        return (
            np.linalg.norm(p - c[0]) <= rad[0] + d + slack
            and np.linalg.norm(p - c[1]) <= rad[1] + d + slack
            and p[1] <= d + slack
        )

    for key in [(0, 1), (0, "w"), (1, "w")]:
        if thr[key] < d3 - tol * scale:
            continue
        if key == (0, 1):
            p = c[0] + (rad[0] + d3) * (c[1] - c[0]) / ell
        else:
            i = key[0]
            p = np.array([v[i], d3])
        if in_all(p, d3):
            return DeltaMaxResult(d3, lift(p), CaseTag.BOUNDARY_CONTACT)

    # (x - v_i)^2 = R_i^2 - h_i^2 + 2 d (R_i + h_i), tangency point (x, d)
    k = [rad[i] + h[i] for i in range(2)]
    e = [rad[i] ** 2 - h[i] ** 2 for i in range(2)]
    cands = []
    dv = v[1] - v[0]
    if abs(dv) > 1e-12 * scale:
        # x = alpha + beta d from the difference of the two equations
        alpha = (e[0] - e[1] + v[1] ** 2 - v[0] ** 2) / (2.0 * dv)
        beta = (k[0] - k[1]) / dv
        a0 = alpha - v[0]
        roots = _quadratic_roots(beta * beta, 2.0 * (a0 * beta - k[0]), a0 * a0 - e[0], scale**2)
        cands = [(alpha + beta * d, d) for d in roots]
    elif abs(k[0] - k[1]) > 1e-12 * scale:
        d = (e[1] - e[0]) / (2.0 * (k[0] - k[1]))
        rhs = e[0] + 2.0 * d * k[0]
        if rhs >= 0:
            cands = [(v[0] + math.sqrt(rhs), d), (v[0] - math.sqrt(rhs), d)]
    valid = [(x, d) for x, d in cands if d >= d3 - tol * scale and in_all(np.array([x, d]), d)]
    if not valid:
        raise NumericalError("no tangency point found for the wall configuration")
    # every tangency point is a common point at its radius, so the smallest wins
    x, d = min(valid, key=lambda xd: xd[1])
    return DeltaMaxResult(float(d), lift(np.array([x, d])), CaseTag.APOLLONIUS_INTERIOR,
                          apollonius_radius=float(d))


def delta_max_wall(ball1: Ball, ball2: Ball, wall: HalfSpace, tol: float | None = None) -> float:
    """Maximal shell radius for two balls and a hard wall."""
    return solve_wall(ball1, ball2, wall, tol).delta_max
