"""Asakura-Oosawa effective pair potential between two hard spheres in 3D.

Energies are in units of ``kT``.  Two colloids of radius ``R`` whose
depletion shells (radius ``R + delta``) overlap gain ``-P_p`` times the
overlap volume, with ``P_p = kT * rho_p`` the ideal osmotic pressure.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

import numpy as np

from .criteria import CriterionReport, theorem1_check
from .errors import InputError
from .geometry import Ball


@dataclass(frozen=True)
class AOParameters:
    R: float
    delta: float
    rho_p: float = 1.0
    kT: float = 1.0

    def __post_init__(self):
        for name in ("R", "delta", "rho_p", "kT"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not (self.R > 0 and math.isfinite(self.R)):
            raise InputError("R must be positive")
        if not (self.delta >= 0 and math.isfinite(self.delta)):
            raise InputError("delta must be nonnegative")
        if not (self.rho_p >= 0 and math.isfinite(self.rho_p)):
            raise InputError("rho_p must be nonnegative")
        if not (self.kT > 0 and math.isfinite(self.kT)):
            raise InputError("kT must be positive")

    @property
    def osmotic_pressure(self) -> float:
        return self.kT * self.rho_p

    @property
    def sigma_cc(self) -> float:
        return 2.0 * self.R

    @property
    def sigma_pc(self) -> float:
        return self.R + self.delta

    sigma_pp = 0.0


def v_dep(r, params: AOParameters):
    """Depletion part of the pair potential at center separation ``r``.

    Nonzero only for ``2R <= r <= 2R + 2 delta``.  The cubic in ``r`` is
    evaluated in factored form, ``(pi/12) (2s - r)^2 (r + 4s)`` with
    ``s = R + delta``, which avoids cancellation near the outer edge.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise InputError("separation must be nonnegative")
    s = params.R + params.delta
    well = (r >= 2.0 * params.R) & (r <= 2.0 * s)
    gap = 2.0 * s - r
    v = -params.osmotic_pressure * (math.pi / 12.0) * gap * gap * (r + 4.0 * s)
    out = np.where(well, v, 0.0) + 0.0  # + 0.0 turns -0.0 into 0.0
    return float(out) if out.ndim == 0 else out


def v_eff(r, params: AOParameters):
    """Hard-core repulsion plus depletion attraction (``inf`` inside ``2R``)."""
    r = np.asarray(r, dtype=float)
    out = np.where(r < 2.0 * params.R, np.inf, v_dep(r, params))
    return float(out) if out.ndim == 0 else out


def exactness_guard(params: AOParameters) -> CriterionReport:
    """Whether the pair potential is exact for equal spheres of radius ``R``.

    ``strict`` means no three depletion shells ever meet; ``satisfied``
    alone (at the threshold itself) means they meet only in single points.
    """
    balls = [Ball(np.zeros(3), params.R)] * 3
    return theorem1_check(balls, params.delta)


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


@dataclass(frozen=True, eq=False)
class PotentialTable:
    r_values: np.ndarray
    v_values: np.ndarray
    params: AOParameters
    dep_values: np.ndarray = field(default=None)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("r,v_eff,v_dep\n")
        for r, ve, vd in zip(self.r_values, self.v_values, self.dep_values):
            buf.write(f"{_fmt(r)},{_fmt(ve)},{_fmt(vd)}\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, params: AOParameters) -> "PotentialTable":
        lines = text.strip("\n").split("\n")
        if lines[0] != "r,v_eff,v_dep":
            raise InputError(f"unexpected header {lines[0]!r}")
        rows = np.array([[float(x) for x in ln.split(",")] for ln in lines[1:]])
        return cls(rows[:, 0], rows[:, 1], params, rows[:, 2])


def potential_table(params: AOParameters, r_min: float, r_max: float, n_points: int) -> PotentialTable:
    """Potential sampled on ``n_points`` evenly spaced separations."""
    if n_points < 2:
        raise InputError("n_points must be at least 2")
    if not (0 <= r_min < r_max):
        raise InputError("need 0 <= r_min < r_max")
    r = np.linspace(r_min, r_max, n_points)
    return PotentialTable(r, v_eff(r, params), params, v_dep(r, params))
