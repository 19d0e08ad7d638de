"""Depletion-radius thresholds guaranteeing no triple overlap of dilated bodies."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .bodies import (
    Ball,
    ConvexPolygon,
    Ellipsoid,
    HalfSpace,
    RoundedPolygon,
    rolling_radius,
    sample_directions,
)
from .deltamax import CRITICAL_RATIO
from .errors import InputError
from .geometry import TOL

__all__ = [
    "ConvexBody",
    "CriterionReport",
    "CuspWarning",
    "rolling_radius",
    "theorem1_check",
    "wall_check",
    "improved_criterion_check",
    "largest_qualifying_delta",
    "WALL_RATIO",
]

ConvexBody = Ball | HalfSpace | Ellipsoid | ConvexPolygon | RoundedPolygon

#: Threshold prefactor when one of the bodies is a planar hard wall.
WALL_RATIO = 0.25

DEFAULT_SAMPLES = {2: 4096, 3: 16384}


class CuspWarning(UserWarning):
    """A body has zero rolling radius, so the criterion is unusable."""


@dataclass(frozen=True)
class CriterionReport:
    """Outcome of a threshold check.

    ``satisfied`` means ``delta <= threshold`` (the common part of the
    dilations has zero volume); ``strict`` means ``delta < threshold``
    (it is empty).  ``limiting_body_index`` is the body setting the threshold.
    """

    threshold: float
    satisfied: bool
    strict: bool
    limiting_body_index: int
    delta: float
    warning: str | None = None


def _report(delta: float, ratio: float, rolls: list[tuple[int, float]]) -> CriterionReport:
    idx, roll = min(rolls, key=lambda t: (t[1], t[0]))
    if roll == 0.0:
        msg = (f"body {idx} has zero rolling radius (corner or cusp); the criterion "
               "can never be met by a positive depletion radius")
        warnings.warn(msg, CuspWarning, stacklevel=3)
        return CriterionReport(0.0, False, False, idx, delta, msg)
    threshold = ratio * roll
    return CriterionReport(threshold, delta <= threshold, delta < threshold, idx, delta)


def theorem1_check(bodies, delta: float) -> CriterionReport:
    """Rolling-radius criterion for three or more compact convex bodies.

    The threshold is ``(2/sqrt(3) - 1) * min Roll``; for balls this is also
    necessary.
    """
    if delta < 0:
        raise InputError("delta must be nonnegative")
    if len(bodies) < 3:
        raise InputError("the criterion needs at least three bodies")
    if any(isinstance(b, HalfSpace) for b in bodies):
        raise InputError("half-spaces are handled by wall_check")
    return _report(delta, CRITICAL_RATIO, [(i, rolling_radius(b)) for i, b in enumerate(bodies)])


def wall_check(bodies, delta: float) -> CriterionReport:
    """Criterion with exactly one hard wall: ``delta < min Roll / 4`` over
    the compact bodies."""
    if delta < 0:
        raise InputError("delta must be nonnegative")
    walls = [i for i, b in enumerate(bodies) if isinstance(b, HalfSpace)]
    if len(walls) != 1:
        raise InputError(f"wall_check needs exactly one half-space, got {len(walls)}")
    rolls = [(i, rolling_radius(b)) for i, b in enumerate(bodies) if i != walls[0]]
    if not rolls:
        raise InputError("wall_check needs at least one compact body")
    return _report(delta, WALL_RATIO, rolls)


def _boundary_points(body, delta: float, n: int) -> np.ndarray:
    """Extreme points of ``body(delta)`` along ``n`` directions."""
    u = sample_directions(body.dim, n)
    return body.support(u) + delta * u


def _check_contains(outer, inner, n: int, tol: float) -> None:
    pts = _boundary_points(inner, 0.0, n)
    scale = max(float(np.max(pts.max(axis=0) - pts.min(axis=0))), 1.0)
    worst = float(np.max(outer.distance(pts)))
    if worst > tol * scale:
        raise InputError(f"inner body is not contained in the body (excess {worst:.3g})")


def improved_criterion_check(body, inner, delta_prime: float, n_samples: int | None = None,
                             tol: float | None = None) -> bool:
    """Whether ``delta_prime`` passes the inner-body criterion for ``body``.

    With ``inner`` a subset of ``body`` having positive rolling radius,
    ``Delta_K = (2/sqrt(3) - 1) Roll(inner)``.  The value qualifies when
    ``0 <= delta_prime <= Delta_K`` and ``body(delta_prime)`` lies inside
    ``inner(Delta_K)``, checked on sampled extreme points of
    ``body(delta_prime)`` with a margin of one tolerance unit (``inner``
    dilated is convex, so extreme points suffice).
    """
    tol = TOL if tol is None else tol
    if isinstance(body, HalfSpace) or isinstance(inner, HalfSpace):
        raise InputError("the inner-body criterion needs compact bodies")
    if body.dim != inner.dim:
        raise InputError("body and inner body have different dimensions")
    n = n_samples or DEFAULT_SAMPLES.get(body.dim, 16384)
    _check_contains(body, inner, n, 1e-7)
    roll = rolling_radius(inner)
    if roll <= 0:
        raise InputError("inner body must have a positive rolling radius")
    cap = CRITICAL_RATIO * roll
    if delta_prime < 0 or delta_prime > cap:
        return False
    pts = _boundary_points(body, delta_prime, n)
    scale = max(roll, 1.0)
    return bool(np.all(inner.distance(pts) <= cap - tol * scale))


def largest_qualifying_delta(body, inner, n_samples: int | None = None,
                             rtol: float = 1e-10) -> float | None:
    """Largest ``delta_prime`` passing :func:`improved_criterion_check`, or
    ``None`` when even zero fails.  Bisection on the (monotone) check."""
    if not improved_criterion_check(body, inner, 0.0, n_samples):
        return None
    lo, hi = 0.0, CRITICAL_RATIO * rolling_radius(inner)
    if improved_criterion_check(body, inner, hi, n_samples):
        return hi
    while hi - lo > rtol * max(hi, 1e-300):
        mid = 0.5 * (lo + hi)
        if improved_criterion_check(body, inner, mid, n_samples):
            lo = mid
        else:
            hi = mid
    return lo


def union_of_balls_check(balls, delta: float) -> CriterionReport:
    """Criterion for nonconvex bodies given as unions of balls.

    Every point of such a body lies in a ball of radius ``min R`` inside it,
    so the threshold is ``(2/sqrt(3) - 1)`` times the smallest ball radius.
    ``balls`` is a list of bodies, each a list of :class:`Ball`.
    """
    rolls = [(i, min(b.radius for b in body)) for i, body in enumerate(balls)]
    return _report(delta, CRITICAL_RATIO, rolls)


def monodisperse_threshold(radius: float) -> float:
    return CRITICAL_RATIO * radius
