"""Closed-loop forward simulation with event detection.

Integrates the planar dynamics r' = cos theta, theta' = -sin(theta)/r
+ u/R under the optimal feedback (turn toward the radial direction,
coast once on it) and detects two events: ReachedUL when theta crosses
zero (the control switches to u = 0) and Escaped when r crosses the
region boundary.  A polar shadow angle is carried alongside so each
sample also has Cartesian coordinates.

The integrator is scipy's adaptive Runge-Kutta 5(4) pair; events are
located by sign-change bracketing plus root refinement inside scipy,
which drives the event function far below the 1e-12 contract.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DomainError, NonTermination, OnBoundaryInward, StartOutside, StepFailure
from .geometry import ScaledState, VehicleConfig

# |theta| at or below this is treated as exactly on the universal line,
# so the control switches to coasting instead of chattering around zero
SWITCH_TOL = 1e-10


class TrajectorySample(NamedTuple):
    t: float
    r: float
    theta: float
    x: float
    y: float
    u: float


class TrajectoryEvent(NamedTuple):
    kind: str
    t: float
    state: ScaledState


@dataclass(frozen=True)
class Trajectory:
    """Time-ordered closed-loop samples plus the events hit on the way.

    Units follow the configuration used to produce the trajectory:
    scaled for rho = ve = 1, physical otherwise (the boundary is then
    at r = rho).
    """

    samples: tuple[TrajectorySample, ...]
    events: tuple[TrajectoryEvent, ...]
    t_escape: float


def feedback_control(state: ScaledState) -> float:
    """Optimal feedback: 0 on the universal line, else turn toward it."""
    if abs(state.theta) <= SWITCH_TOL:
        return 0.0
    return -1.0 if state.theta > 0.0 else 1.0


def rates(state: ScaledState, u: float, R: float) -> tuple[float, float]:
    """State rates (dr/dt, dtheta/dt) for control u and turn radius R."""
    if not -1.0 <= u <= 1.0:
        raise DomainError(f"control must lie in [-1, 1], got {u}")
    if not (math.isfinite(R) and R > 0.0):
        raise DomainError(f"turn radius must be positive and finite, got {R}")
    return (
        math.cos(state.theta),
        -math.sin(state.theta) / state.r + u / R,
    )


def hamiltonian(state: ScaledState, costate: "CostateState", u: float, R: float) -> float:
    """H = -1 + lr cos(theta) + lt u / R - lt sin(theta) / r."""
    return (
        -1.0
        + costate.lambda_r * math.cos(state.theta)
        + costate.lambda_theta * u / R
        - costate.lambda_theta * math.sin(state.theta) / state.r
    )


def usable_part(theta: float) -> bool:
    """True iff a boundary crossing at this heading moves strictly outward."""
    return -math.pi / 2.0 < theta < math.pi / 2.0


@dataclass(frozen=True)
class CostateState:
    """Adjoint variables (lambda_r, lambda_theta) of the minimum principle."""

    lambda_r: float
    lambda_theta: float

    def __post_init__(self) -> None:
        for name in ("lambda_r", "lambda_theta"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)


def _closed_loop_rhs(u: float, R: float) -> Callable[[float, np.ndarray], list[float]]:
    def rhs(t: float, y: np.ndarray) -> list[float]:
        r, theta = y[0], y[1]
        return [
            math.cos(theta),
            -math.sin(theta) / r + u / R,
            math.sin(theta) / r,
        ]

    return rhs


def _run_phase(rhs, t0, t_end, y0, events, tol, max_step):
    sol = solve_ivp(
        rhs,
        (t0, t_end),
        y0,
        method="RK45",
        rtol=tol,
        atol=1e-12,
        max_step=max_step,
        events=events,
        dense_output=False,
    )
    if sol.status == -1:
        raise StepFailure(f"integrator failed: {sol.message}")
    return sol


def integrate(
    initial: ScaledState,
    config: VehicleConfig,
    dt_max: float | None = None,
    tol: float = 1e-9,
) -> Trajectory:
    """Integrate the closed-loop system until escape.

    ``dt_max`` bounds the output sample spacing (in the configured time
    units); ``tol`` is the relative local error tolerance.  Raises
    NonTermination if no escape occurs within 10 * (2 pi R + 2) scaled
    time units, which generously bounds every optimal escape.
    """
    r0 = initial.r / config.rho
    theta0 = initial.theta
    if r0 > 1.0:
        raise StartOutside(
            f"start radius {initial.r} exceeds the region radius {config.rho}"
        )
    R = config.R_scaled
    time_scale = config.time_scale
    length_scale = config.rho

    if r0 == 1.0:
        if not usable_part(theta0):
            raise OnBoundaryInward(
                f"start on the boundary with |theta|={abs(theta0)} >= pi/2"
            )
        sample = TrajectorySample(0.0, initial.r, theta0, initial.r, 0.0, 0.0)
        event = TrajectoryEvent("Escaped", 0.0, initial)
        return Trajectory(samples=(sample,), events=(event,), t_escape=0.0)

    t_cap = 10.0 * (2.0 * math.pi * R + 2.0)
    max_step = np.inf if dt_max is None else dt_max / time_scale
    if max_step <= 0.0:
        raise ValueError(f"dt_max must be positive, got {dt_max}")

    u0 = feedback_control(initial)

    def escape_event(t, y):
        return y[0] - 1.0

    escape_event.terminal = True
    escape_event.direction = 1.0

    times: list[np.ndarray] = []
    states: list[np.ndarray] = []
    u_values: list[np.ndarray] = []
    events: list[TrajectoryEvent] = []

    y0 = [r0, theta0, 0.0]
    t0 = 0.0
    escaped_t = None

    if u0 != 0.0:

        def ul_event(t, y):
            return y[1]

        ul_event.terminal = True
        ul_event.direction = u0

        sol = _run_phase(
            _closed_loop_rhs(u0, R), 0.0, t_cap, y0, [escape_event, ul_event], tol, max_step
        )
        if sol.status == 0:
            raise NonTermination(
                f"no escape within the time bound {t_cap} (scaled units)"
            )
        times.append(sol.t)
        phase_states = sol.y.copy()
        phase_u = np.full(sol.t.size, u0)
        if sol.t_events[0].size:
            escaped_t = sol.t[-1]
            events.append(
                TrajectoryEvent(
                    "Escaped",
                    escaped_t,
                    ScaledState(phase_states[0, -1], phase_states[1, -1]),
                )
            )
        else:
            # reached the universal line: snap theta to exactly zero and coast
            phase_states[1, -1] = 0.0
            phase_u[-1] = 0.0
            t0 = sol.t[-1]
            y0 = [phase_states[0, -1], 0.0, phase_states[2, -1]]
            events.append(TrajectoryEvent("ReachedUL", t0, ScaledState(y0[0], 0.0)))
        states.append(phase_states)
        u_values.append(phase_u)

    if escaped_t is None:
        sol = _run_phase(
            _closed_loop_rhs(0.0, R), t0, t_cap, y0, [escape_event], tol, max_step
        )
        if sol.status == 0 or not sol.t_events[0].size:
            raise NonTermination(
                f"no escape within the time bound {t_cap} (scaled units)"
            )
        skip = 1 if times else 0  # drop the row duplicating the switch sample
        times.append(sol.t[skip:])
        states.append(sol.y[:, skip:])
        u_values.append(np.zeros(sol.t.size - skip))
        escaped_t = sol.t[-1]
        events.append(
            TrajectoryEvent("Escaped", escaped_t, ScaledState(sol.y[0, -1], sol.y[1, -1]))
        )

    t_all = np.concatenate(times)
    y_all = np.hstack(states)
    u_all = np.concatenate(u_values)

    samples = []
    last_t = -math.inf
    for k in range(t_all.size):
        t_k = t_all[k] * time_scale
        if t_k <= last_t:
            continue  # collapse duplicate event rows from coincident events
        last_t = t_k
        r_k, theta_k, psi_k = y_all[0, k], y_all[1, k], y_all[2, k]
        samples.append(
            TrajectorySample(
                t=t_k,
                r=r_k * length_scale,
                theta=theta_k,
                x=r_k * math.cos(psi_k) * length_scale,
                y=r_k * math.sin(psi_k) * length_scale,
                u=u_all[k],
            )
        )

    scaled_events = tuple(
        TrajectoryEvent(ev.kind, ev.t * time_scale, ScaledState(ev.state.r * length_scale, ev.state.theta))
        for ev in events
    )
    return Trajectory(
        samples=tuple(samples),
        events=scaled_events,
        t_escape=escaped_t * time_scale,
    )
