"""Minimum-time escape of a turn-rate-constrained vehicle from a disk.

The vehicle moves at constant speed with a bounded turn rate inside a
circular region and wants out as fast as possible.  In polar
coordinates centred on the region, with the heading measured from the
outward radial, the optimal policy needs only (r, theta): turn as hard
as needed until the heading is radial, then run straight.  This package
provides the strategy classification and closed-form escape times, the
supporting circle geometry, forward simulation of the closed-loop
policy, retrograde characteristic fields with costates, a brute-force
verification oracle, and rasters/contours of the strategy map, plus a
CLI (``dubins-escape``) over all of it.
"""

from .atlas import FieldGrid, SENTINEL_CODE, boundary_overlay, raster, time_contours
from .characteristics import (
    CharacteristicPath,
    CharacteristicSample,
    costate_rates,
    emit_characteristic,
    on_universal_line,
    replay_mismatch,
    retro_rates,
)
from .errors import (
    CenterStart,
    DomainError,
    EscapeError,
    IntegrationError,
    NegativeArc,
    NoEscapingCandidate,
    NonTermination,
    NotIntersecting,
    OnBoundaryInward,
    SeedOutOfRange,
    StartOutside,
    StepFailure,
)
from .geometry import (
    InterceptGeometry,
    PlanarPoint,
    ScaledState,
    TurnGeometry,
    VehicleConfig,
    intercept_geometry,
    phi_angle,
    strategy_boundary_curve,
    tangent_norm,
    tangent_point,
    turn_center,
    turn_geometry,
    wrap_angle,
    wrap_arc,
)
from .oracle import (
    CandidateResult,
    SampleSpec,
    VerifyReport,
    candidate_search,
    grid_bound,
    verify,
)
from .simulate import (
    CostateState,
    Trajectory,
    TrajectoryEvent,
    TrajectorySample,
    feedback_control,
    hamiltonian,
    integrate,
    rates,
    usable_part,
)
from .solver import (
    StrategyDecision,
    StrategyTag,
    classify,
    escape_time_straight,
    escape_time_turn_only,
    escape_time_turn_straight,
    mirror_reduce,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "CandidateResult",
    "CenterStart",
    "CharacteristicPath",
    "CharacteristicSample",
    "CostateState",
    "DomainError",
    "EscapeError",
    "FieldGrid",
    "IntegrationError",
    "InterceptGeometry",
    "NegativeArc",
    "NoEscapingCandidate",
    "NonTermination",
    "NotIntersecting",
    "OnBoundaryInward",
    "PlanarPoint",
    "SENTINEL_CODE",
    "SampleSpec",
    "ScaledState",
    "SeedOutOfRange",
    "StartOutside",
    "StepFailure",
    "StrategyDecision",
    "StrategyTag",
    "Trajectory",
    "TrajectoryEvent",
    "TrajectorySample",
    "TurnGeometry",
    "VehicleConfig",
    "VerifyReport",
    "boundary_overlay",
    "candidate_search",
    "classify",
    "costate_rates",
    "emit_characteristic",
    "escape_time_straight",
    "escape_time_turn_only",
    "escape_time_turn_straight",
    "feedback_control",
    "grid_bound",
    "hamiltonian",
    "integrate",
    "intercept_geometry",
    "mirror_reduce",
    "on_universal_line",
    "phi_angle",
    "raster",
    "replay_mismatch",
    "solve",
    "strategy_boundary_curve",
    "tangent_norm",
    "tangent_point",
    "time_contours",
    "turn_center",
    "turn_geometry",
    "usable_part",
    "verify",
    "wrap_angle",
    "wrap_arc",
]
