"""Closed-form circle and tangent geometry of the right-turn circle.

Everything lives in the scaled plane: the region to escape is the unit
disk centered at the origin C, the vehicle starts at E = (r, 0) on the
positive x-axis, and theta is its heading measured counterclockwise
from the outward radial direction.  Under saturated right turn the
vehicle traces the circle of radius R about the center O; the
operations below construct O, the tangent point T where the heading
becomes radially outward, the boundary intercept I, and the angles
phi, delta, alpha, beta, omega that feed the escape-time formulas.

Conventions: states are reduced to theta in [0, pi] (right turn) by the
solver before these functions are called; all stored angles are in
(-pi, pi] and arc angles in [0, 2*pi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import CenterStart, DomainError, NotIntersecting

TWO_PI = 2.0 * math.pi


def wrap_angle(angle: float) -> float:
    """Wrap an angle to the half-open interval (-pi, pi]."""
    w = math.remainder(angle, TWO_PI)
    if w <= -math.pi:
        # remainder() can land on -pi exactly; the convention keeps +pi
        w += TWO_PI
    return w


def wrap_arc(angle: float) -> float:
    """Wrap an arc angle to [0, 2*pi)."""
    a = angle % TWO_PI
    # fmod can round a hair-below-zero input up to the full period
    return 0.0 if a >= TWO_PI else a


class PlanarPoint(NamedTuple):
    """Cartesian point in the scaled plane (region = unit disk at origin)."""

    x: float
    y: float

    def norm(self) -> float:
        return math.hypot(self.x, self.y)


@dataclass(frozen=True)
class ScaledState:
    """Vehicle state on the reduced cylinder.

    r is the distance from the region center in units of the region
    radius; theta is the heading relative to the outward radial
    direction, normalized to (-pi, pi] on construction.  r must be
    strictly positive: at the center the relative heading is undefined
    and the dynamics are singular.
    """

    r: float
    theta: float

    def __post_init__(self) -> None:
        r = float(self.r)
        theta = float(self.theta)
        if not (math.isfinite(r) and math.isfinite(theta)):
            raise DomainError(f"state must be finite, got r={r}, theta={theta}")
        if r <= 0.0:
            raise CenterStart(f"r must be positive (got {r}); the region center is excluded")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "theta", wrap_angle(theta))


@dataclass(frozen=True)
class VehicleConfig:
    """Physical problem data: region radius rho, minimum turn radius R,
    vehicle speed ve.  rho = ve = 1 is the scaled problem; any other
    values select physical units for inputs and outputs."""

    R: float
    rho: float = 1.0
    ve: float = 1.0

    def __post_init__(self) -> None:
        for name in ("R", "rho", "ve"):
            value = float(getattr(self, name))
            if not (math.isfinite(value) and value > 0.0):
                raise DomainError(f"{name} must be positive and finite, got {value}")
            object.__setattr__(self, name, value)

    @property
    def R_scaled(self) -> float:
        """Turn radius in units of the region radius."""
        return self.R / self.rho

    @property
    def time_scale(self) -> float:
        """Seconds per scaled time unit: rho / ve."""
        return self.rho / self.ve


@dataclass(frozen=True)
class TurnGeometry:
    """Right-turn circle data for one state.

    sigma2 is the tangent length from the region center C to the turn
    circle, which equals the distance ||T|| from C to the tangent point;
    sigma1 is the companion length sqrt(sigma2^2 + (R sin theta)^2).
    phi is the polar angle of the tangent point T.
    """

    center_O: PlanarPoint
    norm_O: float
    sigma1: float
    sigma2: float
    tangent_norm: float
    phi: float


@dataclass(frozen=True)
class InterceptGeometry:
    """Where the right-turn circle crosses the region boundary.

    alpha is the polar angle of the exit point I; delta, beta, omega are
    the triangle angles at C, at O toward I, and at O toward E; and
    arc_angle is the clockwise arc from E to I on the turn circle.
    """

    alpha: float
    delta: float
    beta: float
    omega: float
    arc_angle: float
    exit_point: PlanarPoint


def _check_turn_inputs(state: ScaledState, R: float) -> None:
    if not (math.isfinite(R) and R > 0.0):
        raise DomainError(f"turn radius must be positive and finite, got {R}")
    if state.theta < 0.0:
        raise DomainError(
            f"right-turn geometry expects theta in [0, pi], got {state.theta}; "
            "reduce negative headings by mirror symmetry first"
        )


def turn_center(state: ScaledState, R: float) -> PlanarPoint:
    """Center O of the right-turn circle through E = (r, 0).

    O sits at distance R to the right of the velocity: with global
    heading angle theta at E, that is O = (r + R sin theta, -R cos theta).
    """
    _check_turn_inputs(state, R)
    return PlanarPoint(state.r + R * math.sin(state.theta), -R * math.cos(state.theta))


def tangent_norm(state: ScaledState, R: float) -> float:
    """Distance ||T|| from the region center to the tangent point.

    Equals the tangent length from C to the turn circle,
    sigma2 = sqrt(r^2 + 2 r R sin theta) = sqrt(||O||^2 - R^2).
    """
    _check_turn_inputs(state, R)
    s2_sq = state.r * (state.r + 2.0 * R * math.sin(state.theta))
    if s2_sq <= 0.0:
        raise DomainError(
            f"degenerate turn circle: region center inside or on it (r={state.r}, "
            f"theta={state.theta}, R={R})"
        )
    return math.sqrt(s2_sq)


def phi_angle(state: ScaledState, R: float) -> float:
    """Polar angle of the tangent point T.

    Built as atan2(O_y, O_x) + asin(R/||O||): the polar angle of the
    turn center plus the half-angle subtended by the circle, which
    selects the tangent point the vehicle reaches turning clockwise.
    """
    O = turn_center(state, R)
    n_O = O.norm()
    if n_O <= R:
        raise DomainError(
            f"region center inside the turn circle (||O||={n_O} <= R={R}); "
            "no tangent from C exists"
        )
    return math.atan2(O.y, O.x) + math.asin(R / n_O)


def tangent_point(state: ScaledState, R: float) -> PlanarPoint:
    """Point T on the turn circle where the heading becomes radially
    outward; the switch point from arc to straight segment."""
    phi = phi_angle(state, R)
    s2 = tangent_norm(state, R)
    return PlanarPoint(s2 * math.cos(phi), s2 * math.sin(phi))


def turn_geometry(state: ScaledState, R: float) -> TurnGeometry:
    """Assemble the full turn-circle record for one state."""
    O = turn_center(state, R)
    n_O = O.norm()
    s2 = tangent_norm(state, R)
    r_sin = R * math.sin(state.theta)
    return TurnGeometry(
        center_O=O,
        norm_O=n_O,
        sigma1=math.hypot(s2, r_sin),
        sigma2=s2,
        tangent_norm=s2,
        phi=phi_angle(state, R),
    )


def _clamped_acos(value: float) -> float:
    # guards law-of-cosines ratios against <= 1 ulp excursions past +/-1
    return math.acos(min(1.0, max(-1.0, value)))


def intercept_geometry(state: ScaledState, R: float, rho: float = 1.0) -> InterceptGeometry:
    """Exit geometry where the right-turn circle crosses the boundary.

    The exit point I is the first boundary crossing reached by clockwise
    motion from E.  Its polar angle is alpha = eta + delta, where eta is
    the polar angle of O and delta the angle subtended at C between O
    and I (law of cosines over triangle C-I-O).  beta and omega are the
    angles at O toward I and toward E; the clockwise arc from E to I is
    computed as a wrapped atan2 difference, which equals beta - omega
    for cos theta >= 0 and beta + omega for cos theta < 0.
    """
    _check_turn_inputs(state, R)
    if not (math.isfinite(rho) and rho > 0.0):
        raise DomainError(f"region radius must be positive and finite, got {rho}")
    if state.r >= rho:
        raise DomainError(
            f"intercept geometry needs a state strictly inside the region "
            f"(r={state.r} >= rho={rho})"
        )
    O = turn_center(state, R)
    n_O = O.norm()
    if rho > n_O + R or rho < abs(n_O - R):
        raise NotIntersecting(
            f"turn circle (center ({O.x}, {O.y}), radius {R}) does not cross "
            f"the boundary of radius {rho}"
        )

    delta = _clamped_acos((n_O * n_O + rho * rho - R * R) / (2.0 * n_O * rho))
    eta = math.atan2(O.y, O.x)
    alpha = wrap_angle(eta + delta)
    exit_point = PlanarPoint(rho * math.cos(alpha), rho * math.sin(alpha))

    beta = _clamped_acos((n_O * n_O + R * R - rho * rho) / (2.0 * n_O * R))
    # E lies on its own turn circle, so the triangle E-O-C has sides
    # r, ||O||, R and the angle at O follows the same law of cosines
    omega = _clamped_acos((n_O * n_O + R * R - state.r * state.r) / (2.0 * n_O * R))

    lam_e = math.atan2(-O.y, state.r - O.x)
    lam_i = math.atan2(exit_point.y - O.y, exit_point.x - O.x)
    arc_angle = wrap_arc(lam_e - lam_i)

    return InterceptGeometry(
        alpha=alpha,
        delta=delta,
        beta=beta,
        omega=omega,
        arc_angle=arc_angle,
        exit_point=exit_point,
    )


def strategy_boundary_curve(
    R: float, rho: float, theta_samples: Iterable[float]
) -> list[tuple[float, float]]:
    """Locus of states whose tangent point falls exactly on the boundary.

    For each theta in [0, pi] returns (r, theta) with r solving
    r^2 + 2 r R sin theta = rho^2; above this radius the tangent point
    lies outside the region (turn-only regime), below it inside
    (turn-straight regime), and the two escape-time formulas agree on
    the curve itself.
    """
    if not (math.isfinite(R) and R > 0.0):
        raise DomainError(f"turn radius must be positive and finite, got {R}")
    if not (math.isfinite(rho) and rho > 0.0):
        raise DomainError(f"region radius must be positive and finite, got {rho}")
    points = []
    for theta in theta_samples:
        if not 0.0 <= theta <= math.pi:
            raise DomainError(f"boundary curve is defined for theta in [0, pi], got {theta}")
        h = R * math.sin(theta)
        points.append((math.hypot(h, rho) - h, theta))
    return points
