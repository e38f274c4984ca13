"""Strategy classification and closed-form minimum escape times.

Three optimal strategies exist depending on the start state: move
straight out along the radial direction (theta = 0), turn right until
the heading is radial and then go straight (tangent point inside the
region), or turn right all the way to the boundary (tangent point on or
outside the region).  Negative headings are handled by mirror symmetry:
the problem is reflected about the x-axis, solved with a right turn,
and the resulting geometry reflected back.

All computation happens in scaled units (region radius 1, unit speed);
a single rescale at the end converts times and lengths to physical
units when the configuration has rho != 1 or ve != 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError, NegativeArc, OnBoundaryInward, StartOutside
from .geometry import (
    InterceptGeometry,
    PlanarPoint,
    ScaledState,
    TurnGeometry,
    VehicleConfig,
    intercept_geometry,
    tangent_norm,
    turn_geometry,
)

# arcs this far below zero indicate a misclassified state, not roundoff
_ARC_SLACK = 1e-12


class StrategyTag(str, Enum):
    STRAIGHT = "straight"
    TURN_STRAIGHT = "turn-straight"
    TURN_ONLY = "turn-only"

    @property
    def code(self) -> int:
        """Stable small-integer code used by rasters and serializers."""
        return _STRATEGY_CODES[self]


_STRATEGY_CODES = {
    StrategyTag.STRAIGHT: 0,
    StrategyTag.TURN_STRAIGHT: 1,
    StrategyTag.TURN_ONLY: 2,
}


@dataclass(frozen=True)
class StrategyDecision:
    """Full record of one solved escape problem.

    Times and lengths are in the units of the configuration used
    (scaled when rho = ve = 1, physical otherwise).  When ``mirrored``
    is set the input heading was negative and every reflected quantity
    (exit point, exit heading, turn center, phi, alpha) describes the
    actual left-turn geometry of the unreduced problem.
    """

    tag: StrategyTag
    t_escape: float
    turn: TurnGeometry | None
    intercept: InterceptGeometry | None
    exit_point: PlanarPoint
    exit_heading_theta: float
    mirrored: bool


def mirror_reduce(state: ScaledState) -> tuple[ScaledState, bool]:
    """Reflect a negative heading into [0, pi].

    Returns the reduced state and a flag telling whether reflection
    happened.  theta = pi is kept as-is (right-turn tie-break; the left
    turn gives the identical time by symmetry).
    """
    if state.theta < 0.0:
        return ScaledState(state.r, -state.theta), True
    return state, False


def classify(state: ScaledState, R: float) -> StrategyTag:
    """Pick the optimal strategy for a reduced scaled state.

    Straight for theta = 0; otherwise turn-straight when the tangent
    point lies strictly inside the unit disk and turn-only when it lies
    on or outside it.
    """
    if state.r > 1.0:
        raise StartOutside(f"state lies outside the unit region (r={state.r})")
    if state.theta < 0.0:
        raise DomainError(
            f"classification expects a mirror-reduced heading in [0, pi], got {state.theta}"
        )
    if state.theta == 0.0:
        return StrategyTag.STRAIGHT
    if tangent_norm(state, R) < 1.0:
        return StrategyTag.TURN_STRAIGHT
    return StrategyTag.TURN_ONLY


def escape_time_straight(state: ScaledState, config: VehicleConfig) -> float:
    """Escape time for radial motion: (rho - r) / ve."""
    if state.theta != 0.0:
        raise DomainError(f"straight escape requires theta = 0, got {state.theta}")
    if state.r > config.rho:
        raise StartOutside(f"state lies outside the region (r={state.r}, rho={config.rho})")
    return (config.rho - state.r) / config.ve


def escape_time_turn_straight(state: ScaledState, config: VehicleConfig) -> float:
    """Escape time for turn-then-straight: R(theta - phi)/ve + (rho - ||T||)/ve."""
    tg = turn_geometry(state, config.R)
    if state.theta <= 0.0:
        raise DomainError(f"turn-straight requires theta > 0, got {state.theta}")
    # tolerate the regime boundary itself (||T|| = rho, zero straight leg)
    # so both closed forms can be compared exactly on it
    if tg.tangent_norm - config.rho > _ARC_SLACK * config.rho:
        raise DomainError(
            f"turn-straight requires the tangent point inside the region "
            f"(||T||={tg.tangent_norm} > rho={config.rho})"
        )
    arc = state.theta - tg.phi
    if arc < -_ARC_SLACK:
        raise NegativeArc(
            f"turn arc theta - phi = {arc} is negative; state should have been "
            "classified turn-only"
        )
    return (config.R * max(arc, 0.0) + (config.rho - tg.tangent_norm)) / config.ve


def escape_time_turn_only(state: ScaledState, config: VehicleConfig) -> float:
    """Escape time for a pure turn: R * arc / ve, with the arc the
    clockwise angle from the start to the boundary intercept."""
    if state.theta <= 0.0:
        raise DomainError(f"turn-only requires theta > 0, got {state.theta}")
    if config.rho - tangent_norm(state, config.R) > _ARC_SLACK * config.rho:
        raise DomainError("turn-only requires the tangent point on or outside the region")
    ig = intercept_geometry(state, config.R, config.rho)
    return config.R * ig.arc_angle / config.ve


def _exit_heading(exit_point: PlanarPoint, center_O: PlanarPoint, R: float) -> float:
    """Relative heading at a boundary point reached by clockwise turning."""
    # clockwise tangent at angle lam on the turn circle is (sin lam, -cos lam)
    sin_lam = (exit_point.y - center_O.y) / R
    cos_lam = (exit_point.x - center_O.x) / R
    n = exit_point.norm()
    rx, ry = exit_point.x / n, exit_point.y / n
    dot = rx * sin_lam - ry * cos_lam
    cross = rx * (-cos_lam) - ry * sin_lam
    return math.atan2(cross, dot)


def _reflect_turn(tg: TurnGeometry) -> TurnGeometry:
    return TurnGeometry(
        center_O=PlanarPoint(tg.center_O.x, -tg.center_O.y),
        norm_O=tg.norm_O,
        sigma1=tg.sigma1,
        sigma2=tg.sigma2,
        tangent_norm=tg.tangent_norm,
        phi=-tg.phi,
    )


def _reflect_intercept(ig: InterceptGeometry) -> InterceptGeometry:
    return InterceptGeometry(
        alpha=-ig.alpha,
        delta=ig.delta,
        beta=ig.beta,
        omega=ig.omega,
        arc_angle=ig.arc_angle,
        exit_point=PlanarPoint(ig.exit_point.x, -ig.exit_point.y),
    )


def _scale_point(p: PlanarPoint, factor: float) -> PlanarPoint:
    return PlanarPoint(p.x * factor, p.y * factor)


def _scale_turn(tg: TurnGeometry, factor: float) -> TurnGeometry:
    return TurnGeometry(
        center_O=_scale_point(tg.center_O, factor),
        norm_O=tg.norm_O * factor,
        sigma1=tg.sigma1 * factor,
        sigma2=tg.sigma2 * factor,
        tangent_norm=tg.tangent_norm * factor,
        phi=tg.phi,
    )


def _scale_intercept(ig: InterceptGeometry, factor: float) -> InterceptGeometry:
    return InterceptGeometry(
        alpha=ig.alpha,
        delta=ig.delta,
        beta=ig.beta,
        omega=ig.omega,
        arc_angle=ig.arc_angle,
        exit_point=_scale_point(ig.exit_point, factor),
    )


def solve(state: ScaledState, config: VehicleConfig) -> StrategyDecision:
    """Classify and solve one escape problem.

    ``state.r`` is in the same length units as ``config.rho``; with the
    default rho = ve = 1 everything is scaled.  The solver reduces a
    negative heading by mirror symmetry, classifies, evaluates the
    matching closed form in scaled units, assembles the turn/intercept
    geometry, applies a single rescale to the configured units, and
    reflects the geometry back if the input was mirrored.
    """
    r_scaled = state.r / config.rho
    if r_scaled > 1.0:
        raise StartOutside(
            f"start radius {state.r} exceeds the region radius {config.rho}"
        )
    R = config.R_scaled

    if r_scaled == 1.0:
        if abs(state.theta) >= math.pi / 2.0:
            raise OnBoundaryInward(
                f"start on the boundary with |theta|={abs(state.theta)} >= pi/2 "
                "moves inward or tangentially; not an escape problem"
            )
        # already crossing the usable part: escape is immediate
        reduced, mirrored = mirror_reduce(ScaledState(r_scaled, state.theta))
        tag = classify(reduced, R)
        turn = turn_geometry(reduced, R) if reduced.theta > 0.0 else None
        if turn is not None:
            turn = _scale_turn(turn, config.rho)
            if mirrored:
                turn = _reflect_turn(turn)
        return StrategyDecision(
            tag=tag,
            t_escape=0.0,
            turn=turn,
            intercept=None,
            exit_point=PlanarPoint(config.rho, 0.0),
            exit_heading_theta=state.theta,
            mirrored=mirrored,
        )

    reduced, mirrored = mirror_reduce(ScaledState(r_scaled, state.theta))
    tag = classify(reduced, R)

    turn: TurnGeometry | None = None
    intercept: InterceptGeometry | None = None
    exit_heading = 0.0

    if tag is StrategyTag.STRAIGHT:
        t_scaled = 1.0 - reduced.r
        exit_point = PlanarPoint(1.0, 0.0)
    elif tag is StrategyTag.TURN_STRAIGHT:
        turn = turn_geometry(reduced, R)
        arc = reduced.theta - turn.phi
        if arc < -_ARC_SLACK:
            raise NegativeArc(
                f"turn arc theta - phi = {arc} is negative; state should have been "
                "classified turn-only"
            )
        t_scaled = R * max(arc, 0.0) + (1.0 - turn.sigma2)
        exit_point = PlanarPoint(math.cos(turn.phi), math.sin(turn.phi))
    else:
        turn = turn_geometry(reduced, R)
        intercept = intercept_geometry(reduced, R, 1.0)
        t_scaled = R * intercept.arc_angle
        exit_point = intercept.exit_point
        exit_heading = _exit_heading(exit_point, turn.center_O, R)

    t_escape = t_scaled * config.time_scale
    exit_point = _scale_point(exit_point, config.rho)
    if turn is not None:
        turn = _scale_turn(turn, config.rho)
    if intercept is not None:
        intercept = _scale_intercept(intercept, config.rho)

    if mirrored:
        exit_point = PlanarPoint(exit_point.x, -exit_point.y)
        exit_heading = -exit_heading
        if turn is not None:
            turn = _reflect_turn(turn)
        if intercept is not None:
            intercept = _reflect_intercept(intercept)

    return StrategyDecision(
        tag=tag,
        t_escape=t_escape,
        turn=turn,
        intercept=intercept,
        exit_point=exit_point,
        exit_heading_theta=exit_heading,
        mirrored=mirrored,
    )
