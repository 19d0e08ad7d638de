"""Randomized verification campaigns tying closed forms to brute force.

Configuration ``i`` of a campaign run with seed ``s`` is drawn from
``numpy.random.default_rng([s, i])``, so any failure can be regenerated on
its own, and every failure record also carries the full ball data.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bodies import HalfSpace
from .deltamax import (
    CRITICAL_RATIO,
    CaseTag,
    apollonius_solve,
    delta_max,
    delta_star_by_bisection,
    descartes_contact_radius,
    solve_wall,
)
from .errors import InputError, NumericalError
from .geometry import Ball, ConfigurationTriplet, barycentric, reduce_to_plane, side_from_angle
from .oracle import minimax_delta, truncated_inclusion_exclusion, union_volume_mc
from .sampling import place_triangle, random_config, random_radii, random_rotation

DEFAULT_SIZES = {
    "tightness": 10_000,
    "monotonicity": 1_000,
    "descartes": 1_000,
    "dichotomy": 1_000,
    "plane-reduction": 100,
    "inclusion-exclusion": 20,
    "wall": 200,
    "oracle": 1_000,
}


@dataclass
class CampaignReport:
    name: str
    n_configs: int
    seed: int
    failures: list = field(default_factory=list)
    max_violation: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_text(self) -> str:
        lines = [
            f"campaign: {self.name}",
            f"configurations: {self.n_configs}",
            f"seed: {self.seed}",
            f"failures: {len(self.failures)}",
            f"max_violation: {self.max_violation!r}",
            f"result: {'PASS' if self.passed else 'FAIL'}",
        ]
        for f in self.failures:
            lines.append(f"failure: {f}")
        return "\n".join(lines) + "\n"


def _balls_record(balls) -> list[dict]:
    return [{"center": b.center.tolist(), "radius": b.radius} for b in balls]


def _failure(seed, index, balls, violation, detail, delta=None, extra=None) -> dict:
    rec = {"seed": seed, "index": index, "violation": violation, "detail": detail,
           "balls": _balls_record(balls)}
    if delta is not None:
        rec["delta"] = delta
    if extra:
        rec.update(extra)
    return rec


# Each check returns (violation, failure-or-None) for one configuration.


def _check_tightness(rng, seed, i):
    cfg = random_config(rng, (0.1, 10.0), (0.0, 2.0))
    dm = delta_max(cfg).delta_max
    bound = max(CRITICAL_RATIO * min(cfg.radii), descartes_contact_radius(*cfg.radii))
    v = bound - dm
    if v > 1e-9:
        return v, _failure(seed, i, cfg.balls, v, "delta_max below critical radius", dm)
    return v, None


def _angle_move(rng, cfg: ConfigurationTriplet):
    """Decrease one corner angle at fixed adjacent sides, keeping disjointness."""
    disks, _ = reduce_to_plane(cfg.balls)
    c = [d.center for d in disks]
    r = [d.radius for d in disks]
    corner = int(rng.integers(3))
    j, k = (corner + 1) % 3, (corner + 2) % 3
    lj = float(np.linalg.norm(c[k] - c[corner]))
    lk = float(np.linalg.norm(c[j] - c[corner]))
    u, w = c[j] - c[corner], c[k] - c[corner]
    alpha = math.acos(min(1.0, max(-1.0, float(u @ w) / (lj * lk))))
    cos_max = (lj * lj + lk * lk - (r[j] + r[k]) ** 2) / (2.0 * lj * lk)
    alpha_min = math.acos(min(1.0, max(-1.0, cos_max)))
    if alpha_min >= alpha:
        return None
    new_alpha = rng.uniform(alpha_min, alpha)
    if side_from_angle(new_alpha, lj, lk) < r[j] + r[k]:
        new_alpha = alpha_min
    pts = np.zeros((3, 2))
    pts[j] = [lk, 0.0]
    pts[k] = [lj * math.cos(new_alpha), lj * math.sin(new_alpha)]
    try:
        return ConfigurationTriplet(tuple(Ball(p, ri) for p, ri in zip(pts, r)))
    except InputError:
        return None


def _check_monotonicity(rng, seed, i):
    cfg = random_config(rng, (0.1, 10.0), (0.0, 5.0))
    moved = _angle_move(rng, cfg)
    if moved is None:
        return 0.0, None
    before = delta_max(cfg).delta_max
    after = delta_max(moved).delta_max
    v = after - before
    if v > 1e-9:
        return v, _failure(seed, i, cfg.balls, v, "angle decrease raised delta_max", before,
                           {"moved": _balls_record(moved.balls), "after": after})
    return v, None


def interior_apollonius_radius(cfg) -> float:
    """Radius of the externally tangent circle centered inside the triangle."""
    disks, _ = reduce_to_plane(cfg.balls)
    inside = [
        s.radius for s in apollonius_solve(disks)
        if np.all(barycentric(s.center, *(d.center for d in disks)) >= -1e-9)
    ]
    if not inside:
        raise NumericalError("no interior externally tangent circle")
    return min(inside)


def _contact_triplet(rng):
    radii = random_radii(rng, (0.1, 10.0))
    sides = [radii[1] + radii[2], radii[0] + radii[2], radii[0] + radii[1]]
    pts = place_triangle(sides) @ random_rotation(rng, 2).T + rng.uniform(-1, 1, 2)
    return ConfigurationTriplet(tuple(Ball(p, r) for p, r in zip(pts, radii)))


def _check_descartes(rng, seed, i):
    cfg = _contact_triplet(rng)
    ref = descartes_contact_radius(*cfg.radii)
    got = interior_apollonius_radius(cfg)
    v = abs(got - ref) / ref
    if v > 1e-10:
        return v, _failure(seed, i, cfg.balls, v, f"apollonius {got!r} vs descartes {ref!r}")
    return v, None


def _check_dichotomy(rng, seed, i):
    cfg = random_config(rng, (0.1, 10.0), (0.0, 5.0))
    res = delta_max(cfg)
    scale = max(cfg.radii)
    tol = 1e-9 * scale
    dm = res.delta_max
    d3 = res.thresholds.largest
    dists = [float(np.linalg.norm(res.witness_point - b.center)) - b.radius for b in cfg.balls]
    problems = []
    v = max(dists) - dm
    if v > tol:
        problems.append("witness outside a dilation")
    if res.case_tag is CaseTag.BOUNDARY_CONTACT:
        v = max(v, abs(dm - d3))
        if abs(dm - d3) > tol:
            problems.append("boundary case but delta_max != largest threshold")
    else:
        v = max(v, max(abs(d - dm) for d in dists), d3 - dm)
        if max(abs(d - dm) for d in dists) > tol:
            problems.append("interior case but witness not equidistant")
        if dm < d3 - tol:
            problems.append("interior case below largest threshold")
        star = delta_star_by_bisection(cfg)
        v = max(v, abs(star - dm) / scale)
        if abs(star - dm) > tol:
            problems.append(f"bisection {star!r} disagrees")
    if problems:
        return v, _failure(seed, i, cfg.balls, v, "; ".join(problems))
    return v, None


def _check_plane_reduction(rng, seed, i):
    cfg = random_config(rng, (0.1, 10.0), (0.0, 3.0), dimension=3)
    dm = delta_max(cfg).delta_max
    mm = minimax_delta(list(cfg.balls)).value
    v = abs(dm - mm) / max(1.0, max(cfg.radii))
    if v > 1e-6:
        return v, _failure(seed, i, cfg.balls, v, f"3D minimax {mm!r} vs reduced {dm!r}")
    return v, None


def _check_oracle(rng, seed, i):
    cfg = random_config(rng, (0.1, 10.0), (0.0, 3.0))
    dm = delta_max(cfg).delta_max
    mm = minimax_delta(list(cfg.balls)).value
    v = abs(dm - mm) / max(1.0, max(cfg.radii))
    if v > 1e-6:
        return v, _failure(seed, i, cfg.balls, v, f"minimax {mm!r} vs delta_max {dm!r}")
    return v, None


def _check_inclusion_exclusion(rng, seed, i):
    cfg = random_config(rng, (0.5, 2.0), (0.0, 1.0))
    delta = 0.9 * delta_max(cfg).delta_max
    est = union_volume_mc(list(cfg.balls), delta, 10**6, seed=int(rng.integers(2**63)))
    ie = truncated_inclusion_exclusion(cfg.balls, delta)
    z = abs(est.volume - ie) / est.std_error
    if z > 3.0:
        return z, _failure(seed, i, cfg.balls, z, f"MC {est.volume!r} vs {ie!r}", delta)
    return z, None


def random_wall_config(rng, radius_range=(0.1, 10.0), gap_range=(0.0, 2.0)):
    """Two balls above the wall ``y <= 0`` (2D)."""
    r1, r2 = random_radii(rng, radius_range)[:2]
    g1, g2, g12 = rng.uniform(*gap_range, 3)
    h1, h2 = r1 + g1, r2 + g2
    ell = r1 + r2 + g12
    dx2 = ell * ell - (h1 - h2) ** 2
    if dx2 < 0:
        h2 = h1 + ell  # stacked vertically
        dx2 = 0.0
    b1 = Ball([0.0, h1], r1)
    b2 = Ball([math.sqrt(dx2), h2], r2)
    return b1, b2, HalfSpace([0.0, 1.0], 0.0)


def _check_wall(rng, seed, i):
    b1, b2, wall = random_wall_config(rng)
    dm = solve_wall(b1, b2, wall).delta_max
    mm = minimax_delta([b1, b2, wall]).value
    scale = max(1.0, b1.radius, b2.radius)
    v = abs(dm - mm) / scale
    bound = 0.25 * min(b1.radius, b2.radius)
    v = max(v, (bound - dm) / scale)
    if v > 1e-6:
        return v, _failure(seed, i, [b1, b2], v, f"wall delta_max {dm!r} vs minimax {mm!r}",
                           extra={"wall": {"normal": [0.0, 1.0], "offset": 0.0}})
    return v, None


CAMPAIGNS = {
    "tightness": _check_tightness,
    "monotonicity": _check_monotonicity,
    "descartes": _check_descartes,
    "dichotomy": _check_dichotomy,
    "plane-reduction": _check_plane_reduction,
    "inclusion-exclusion": _check_inclusion_exclusion,
    "wall": _check_wall,
    "oracle": _check_oracle,
}


def run_campaign(name: str, n_configs: int | None = None, seed: int = 0,
                 workers: int = 1) -> CampaignReport:
    """Run one named property check over ``n_configs`` random configurations.

    Results are gathered in submission order, so the report is identical
    for any number of ``workers``.
    """
    if name not in CAMPAIGNS:
        raise InputError(f"unknown campaign {name!r}; choose from {sorted(CAMPAIGNS)}")
    check = CAMPAIGNS[name]
    n = DEFAULT_SIZES[name] if n_configs is None else int(n_configs)

    def one(i):
        rng = np.random.default_rng([seed, i])
        return check(rng, seed, i)

    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            results = list(ex.map(one, range(n)))
    else:
        results = [one(i) for i in range(n)]
    report = CampaignReport(name, n, seed)
    for v, fail in results:
        report.max_violation = max(report.max_violation, float(v))
        if fail is not None:
            report.failures.append(fail)
    return report
