"""Exactness of pairwise depletion potentials: when do three dilated bodies meet?"""

from .bodies import (
    ConvexPolygon,
    Ellipsoid,
    HalfSpace,
    RoundedPolygon,
    penetration_depth,
    rolling_radius,
)
from .criteria import (
    WALL_RATIO,
    CriterionReport,
    CuspWarning,
    improved_criterion_check,
    largest_qualifying_delta,
    theorem1_check,
    union_of_balls_check,
    wall_check,
)
from .deltamax import (
    CRITICAL_RATIO,
    AngleSplit,
    ApolloniusSolution,
    CaseTag,
    DeltaMaxResult,
    PairwiseThresholds,
    angle_split,
    apollonius_solve,
    corner_angle_of_delta,
    delta_max,
    delta_max_wall,
    delta_star_by_bisection,
    descartes_contact_radius,
    pairwise_thresholds,
    solve_wall,
    tangent_angle,
)
from .errors import CapabilityError, DegenerateInputError, InputError, NumericalError
from .geometry import Ball, ConfigurationTriplet, reduce_to_plane, triangle_from_centers
from .oracle import (
    MinimaxResult,
    UnionVolumeEstimate,
    minimax_delta,
    triple_empty,
    truncated_inclusion_exclusion,
    union_volume_mc,
)
from .potential import AOParameters, PotentialTable, exactness_guard, potential_table, v_dep, v_eff

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
