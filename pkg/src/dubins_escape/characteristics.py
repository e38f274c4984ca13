"""Retrograde integration of the state-costate system.

Optimal escape paths can be traced backward from the boundary: seed the
state on the exit circle at heading theta_f, set the terminal costate
(lambda_r = sec theta_f, lambda_theta = 0), and integrate the coupled
state/costate equations in retrograde time tau.  Along each such
characteristic the optimal Hamiltonian stays at zero, the costate
lambda_theta keeps the sign that makes the bang control consistent with
the geometric feedback law, and replaying the path forward under that
feedback reproduces the seed.

Seeds too close to |theta_f| = pi/2 are rejected: sec theta_f blows up
at the endpoints of the usable part.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DomainError, SeedOutOfRange, StepFailure
from .geometry import ScaledState
from .simulate import SWITCH_TOL, CostateState

# sec(theta_f) is unbounded at +/- pi/2; this sliver stays excluded
SEED_MARGIN = 1e-3
# retrograde integration stops before r = 0 makes the dynamics singular
R_FLOOR = 1e-8


class CharacteristicSample(NamedTuple):
    tau: float
    r: float
    theta: float
    lambda_r: float
    lambda_theta: float
    u: float
    h_residual: float


@dataclass(frozen=True)
class CharacteristicPath:
    """One retrograde characteristic, seeded on the boundary at theta_f."""

    samples: tuple[CharacteristicSample, ...]
    theta_f: float


def _sgn(x: float) -> float:
    if x > 0.0:
        return 1.0
    if x < 0.0:
        return -1.0
    return 0.0


def costate_rates(
    state: ScaledState, costate: CostateState, R: float
) -> tuple[float, float]:
    """Forward costate rates (dlambda_r/dt, dlambda_theta/dt).

    These are the negated Hamiltonian partials with respect to r and
    theta; the turn radius does not appear in them and is accepted only
    for signature symmetry with the state rates.
    """
    sin_t = math.sin(state.theta)
    return (
        -costate.lambda_theta * sin_t / (state.r * state.r),
        costate.lambda_r * sin_t + costate.lambda_theta * math.cos(state.theta) / state.r,
    )


def retro_rates(
    state: ScaledState, costate: CostateState, R: float
) -> tuple[float, float, float, float]:
    """Retrograde rates of (r, theta, lambda_r, lambda_theta).

    Signs are the forward rates negated, with the bang control
    substituted as u = sign(lambda_theta) (sign(0) = 0, which holds
    only at the terminal seed)."""
    sin_t = math.sin(state.theta)
    cos_t = math.cos(state.theta)
    return (
        -cos_t,
        sin_t / state.r - _sgn(costate.lambda_theta) / R,
        costate.lambda_theta * sin_t / (state.r * state.r),
        -costate.lambda_r * sin_t - costate.lambda_theta * cos_t / state.r,
    )


def on_universal_line(state: ScaledState, tol: float = 1e-9) -> bool:
    """True iff the state sits on the singular radial-coast locus
    (0 < r < 1, theta = 0 within tol)."""
    return 0.0 < state.r < 1.0 and abs(state.theta) <= tol


def h_residual(r: float, theta: float, lr: float, lt: float, R: float) -> float:
    """Optimal Hamiltonian H* = -1 + lr cos(theta) + |lt|/R - lt sin(theta)/r.

    Zero along every optimal characteristic; reported per sample as a
    conserved-quantity check on the integration."""
    return -1.0 + lr * math.cos(theta) + abs(lt) / R - lt * math.sin(theta) / r


def emit_characteristic(
    theta_f: float, R: float, tau_max: float, tol: float = 1e-9
) -> CharacteristicPath:
    """Trace one characteristic backward from the boundary.

    Integration runs from the terminal seed (r = 1, theta = theta_f,
    lambda_r = sec theta_f, lambda_theta = 0) until tau_max or until the
    path leaves the field domain: r returns to 1 (states beyond it lie
    outside the region), r hits the floor near the center, |theta|
    reaches pi (the feedback law would flip there), or lambda_theta
    returns to zero.  In the last case the remaining horizon is the
    singular radial coast, which is appended analytically.
    """
    if not (math.isfinite(theta_f) and abs(theta_f) < math.pi / 2.0 - SEED_MARGIN):
        raise SeedOutOfRange(
            f"theta_f must lie in (-pi/2 + {SEED_MARGIN}, pi/2 - {SEED_MARGIN}), "
            f"got {theta_f}"
        )
    if not (math.isfinite(R) and R > 0.0):
        raise DomainError(f"turn radius must be positive and finite, got {R}")
    if not (math.isfinite(tau_max) and tau_max > 0.0):
        raise DomainError(f"tau_max must be positive and finite, got {tau_max}")

    s = -_sgn(theta_f)  # sign of lambda_theta along this branch

    def rhs(tau, y):
        r, theta, lr, lt = y
        sin_t = math.sin(theta)
        return [
            -math.cos(theta),
            sin_t / r - s / R,
            lt * sin_t / (r * r),
            -lr * sin_t - lt * math.cos(theta) / r,
        ]

    def exit_event(tau, y):
        return y[0] - 1.0

    exit_event.terminal = True
    exit_event.direction = 1.0

    def floor_event(tau, y):
        return y[0] - R_FLOOR

    floor_event.terminal = True
    floor_event.direction = -1.0

    events = [exit_event, floor_event]
    if s != 0.0:

        def edge_event(tau, y):
            # theta moves away from zero monotonically on a bang branch
            return y[1] + s * math.pi

        edge_event.terminal = True
        edge_event.direction = -s

        def junction_event(tau, y):
            return y[3]

        junction_event.terminal = True
        junction_event.direction = -s

        events += [edge_event, junction_event]

    y0 = [1.0, theta_f, 1.0 / math.cos(theta_f), 0.0]
    sol = solve_ivp(
        rhs,
        (0.0, tau_max),
        y0,
        method="RK45",
        rtol=tol,
        atol=1e-12,
        events=events,
        dense_output=False,
    )
    if sol.status == -1:
        raise StepFailure(f"retrograde integration failed: {sol.message}")

    y = sol.y.copy()
    junction_fired = s != 0.0 and sol.t_events[3].size > 0
    if junction_fired:
        y[1, -1] = 0.0 if abs(y[1, -1]) <= SWITCH_TOL else y[1, -1]
        y[3, -1] = 0.0

    samples = [
        CharacteristicSample(
            tau=sol.t[k],
            r=y[0, k],
            theta=y[1, k],
            lambda_r=y[2, k],
            lambda_theta=y[3, k],
            u=_sgn(y[3, k]),
            h_residual=h_residual(y[0, k], y[1, k], y[2, k], y[3, k], R),
        )
        for k in range(sol.t.size)
    ]

    if junction_fired and sol.t[-1] < tau_max and y[0, -1] > R_FLOOR:
        # remaining horizon is the singular coast: r falls linearly,
        # heading and costate stay pinned to the universal-line values
        tau_j, r_j, lr_j = sol.t[-1], y[0, -1], y[2, -1]
        tau_stop = min(tau_max, tau_j + (r_j - R_FLOOR))
        n_tail = max(2, math.ceil((tau_stop - tau_j) / 0.05))
        for tau_k in np.linspace(tau_j, tau_stop, n_tail + 1)[1:]:
            r_k = r_j - (tau_k - tau_j)
            samples.append(
                CharacteristicSample(
                    tau=float(tau_k),
                    r=r_k,
                    theta=0.0,
                    lambda_r=lr_j,
                    lambda_theta=0.0,
                    u=0.0,
                    h_residual=h_residual(r_k, 0.0, lr_j, 0.0, R),
                )
            )

    return CharacteristicPath(samples=tuple(samples), theta_f=theta_f)


def replay_mismatch(path: CharacteristicPath, R: float, tol: float = 1e-9) -> float:
    """Forward-replay consistency error of a characteristic.

    Integrates the closed-loop feedback system forward from the far end
    of the path for the full retrograde duration and compares (r, theta)
    against the reversed characteristic at every sample time.  Returns
    the worst absolute mismatch over both components; small values mean
    the retrograde field and the forward feedback law describe the same
    trajectories.
    """
    far = path.samples[-1]
    tau_end = far.tau
    if tau_end == 0.0:
        return 0.0

    def rhs(t, y):
        r, theta = y
        u = 0.0 if abs(theta) <= SWITCH_TOL else (-1.0 if theta > 0.0 else 1.0)
        return [math.cos(theta), -math.sin(theta) / r + u / R]

    sol = solve_ivp(
        rhs,
        (0.0, tau_end),
        [far.r, far.theta],
        method="RK45",
        rtol=tol,
        atol=1e-12,
        dense_output=True,
    )
    if sol.status != 0:
        raise StepFailure(f"forward replay failed: {sol.message}")

    worst = 0.0
    for sample in path.samples:
        r_f, theta_f = sol.sol(tau_end - sample.tau)
        worst = max(worst, abs(r_f - sample.r), abs(theta_f - sample.theta))
    return worst
