"""Independent verification of the closed-form escape times.

Two checks per state, neither reusing the solver's formulas: forward
integration of the feedback law must reproduce the closed-form time,
and a brute-force sweep over the family of bang/bang-singular paths
(turn one way, optionally straighten out) must not find anything
faster.  Candidate times come from direct circle and ray intersections
with the boundary, so the search is also independent of the ODE
machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, EscapeError, NoEscapingCandidate
from .geometry import ScaledState, VehicleConfig, wrap_arc
from .simulate import integrate
from .solver import solve

FAMILIES = (
    "ArcOnlyRight",
    "ArcOnlyLeft",
    "ArcThenStraightRight",
    "ArcThenStraightLeft",
)

# arc-stay-inside and on-boundary slack used by the candidate sweeps
_GEOM_TOL = 1e-12


@dataclass(frozen=True)
class CandidateResult:
    """Best member of one sweep: family name, its free parameter (the
    turn arc in radians), and its escape time (None if the candidate
    never reaches the boundary)."""

    family: str
    parameter: float
    time: float | None


@dataclass(frozen=True)
class SampleSpec:
    """Deterministic pseudorandom sample of scaled states and turn radii."""

    count: int
    seed: int
    r_range: tuple[float, float] = (0.05, 0.99)
    theta_range: tuple[float, float] = (0.0, math.pi)
    R_range: tuple[float, float] = (0.05, 3.0)

    def __post_init__(self) -> None:
        if self.count < 1:
            raise DomainError(f"count must be at least 1, got {self.count}")
        for name in ("r_range", "theta_range", "R_range"):
            lo, hi = getattr(self, name)
            if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
                raise DomainError(f"{name} must be a finite (lo, hi) pair, got {(lo, hi)}")


@dataclass(frozen=True)
class VerifyReport:
    """Verdict for one state: closed form vs integration vs search.

    max_violation is the amount by which the best candidate beats the
    closed form (negative means the closed form won with margin); it
    must stay below the grid resolution bound for the state to pass.
    arc_equals_beta_minus_omega records, for turn-only states, whether
    the clockwise exit arc coincides with beta - omega (true exactly
    when cos theta >= 0; the difference arc = beta + omega appears for
    headings past pi/2)."""

    state: ScaledState
    R: float
    closed_form_time: float
    integrated_time: float
    best_candidate: CandidateResult | None
    max_violation: float
    arc_equals_beta_minus_omega: bool | None
    passed: bool


def _first_arc_crossing(
    Ox: float, Oy: float, R: float, d: float, lam_e: float
) -> float | None:
    """Smallest turn arc (direction d) from the start angle lam_e at
    which the turn circle meets the unit boundary; None if disjoint."""
    D = math.hypot(Ox, Oy)
    if D <= 0.0 or D > 1.0 + R or D < abs(1.0 - R):
        return None
    m = (D * D + R * R - 1.0) / (2.0 * D)
    h = math.sqrt(max(R * R - m * m, 0.0))
    ex_x, ex_y = -Ox / D, -Oy / D
    ey_x, ey_y = -ex_y, ex_x
    best = None
    for sign_h in (1.0, -1.0):
        vx = m * ex_x + sign_h * h * ey_x
        vy = m * ex_y + sign_h * h * ey_y
        arc = wrap_arc(d * (math.atan2(vy, vx) - lam_e))
        if best is None or arc < best:
            best = arc
    return best


def _sweep_arc_then_straight(
    Ox: float, Oy: float, R: float, d: float, lam_e: float, theta: float, s: np.ndarray,
    s_cap: float,
) -> tuple[float, float] | None:
    """Best (time, arc) for turn-by-s-then-straight over the given arc
    grid; arcs past s_cap (where the turn itself has left the region)
    are excluded."""
    lam = lam_e + d * s
    px = Ox + R * np.cos(lam)
    py = Oy + R * np.sin(lam)
    chi = theta + d * s
    hx = np.cos(chi)
    hy = np.sin(chi)
    norm2 = px * px + py * py
    valid = np.logical_and.accumulate(norm2 <= 1.0 + _GEOM_TOL) & (s <= s_cap)
    if not valid.any():
        return None
    ph = px * hx + py * hy
    disc = np.clip(ph * ph + 1.0 - norm2, 0.0, None)
    times = R * s + (-ph + np.sqrt(disc))
    times[~valid] = np.inf
    j = int(np.argmin(times))
    return float(times[j]), float(s[j])


def candidate_search(
    state: ScaledState, config: VehicleConfig, n_grid: int = 2000
) -> CandidateResult:
    """Fastest escaping path over all four candidate families.

    Arc-only candidates are resolved exactly by circle-circle
    intersection; arc-then-straight candidates sweep the switch arc on
    a uniform grid of ``n_grid`` points over [0, 2 pi), then refine one
    window around the incumbent to resolution 2 pi / n_grid**2.
    """
    if n_grid < 100:
        raise DomainError(f"n_grid must be at least 100, got {n_grid}")
    r = state.r / config.rho
    if r >= 1.0:
        raise DomainError(f"candidate search needs an interior state, got scaled r={r}")
    R = config.R_scaled
    theta = state.theta

    best_time: float | None = None
    best_family = FAMILIES[0]
    best_parameter = 0.0

    coarse = np.arange(n_grid) * (2.0 * math.pi / n_grid)
    for d, fam_arc, fam_ats in ((-1.0, FAMILIES[0], FAMILIES[2]), (1.0, FAMILIES[1], FAMILIES[3])):
        # turn center at distance R to the side selected by d
        Ox = r - d * R * math.sin(theta)
        Oy = d * R * math.cos(theta)
        lam_e = math.atan2(-Oy, r - Ox)

        arc = _first_arc_crossing(Ox, Oy, R, d, lam_e)
        if arc is not None:
            t_arc = R * arc
            if best_time is None or t_arc < best_time:
                best_time, best_family, best_parameter = t_arc, fam_arc, arc
            s_cap = arc
        else:
            s_cap = math.inf

        hit = _sweep_arc_then_straight(Ox, Oy, R, d, lam_e, theta, coarse, s_cap)
        if hit is not None:
            _, s_star = hit
            window = 2.0 * math.pi / n_grid
            fine = np.linspace(
                max(0.0, s_star - window), s_star + window, 2 * n_grid + 1
            )
            refined = _sweep_arc_then_straight(
                Ox, Oy, R, d, lam_e, theta, fine, s_cap + window
            )
            t_ats, s_ats = refined if refined is not None else hit
            if best_time is None or t_ats < best_time:
                best_time, best_family, best_parameter = t_ats, fam_ats, s_ats

    if best_time is None:
        raise NoEscapingCandidate(
            f"no candidate path escapes from r={state.r}, theta={state.theta}"
        )
    return CandidateResult(
        family=best_family,
        parameter=best_parameter,
        time=best_time * config.time_scale,
    )


def grid_bound(R_scaled: float, n_grid: int) -> float:
    """First-order resolution bound of the candidate sweep: no candidate
    may beat the closed form by more than this."""
    return 2.0 * math.pi * R_scaled / (n_grid * n_grid)


def verify(spec: SampleSpec, n_grid: int = 2000, tol: float = 1e-9) -> list[VerifyReport]:
    """Run the full closed-form / integration / search cross-check on a
    seeded sample of scaled states.  Per-sample errors are recorded as
    failed reports instead of aborting the batch."""
    rng = np.random.default_rng(spec.seed)
    r_draw = rng.uniform(*spec.r_range, spec.count)
    theta_draw = rng.uniform(*spec.theta_range, spec.count)
    R_draw = rng.uniform(*spec.R_range, spec.count)

    reports: list[VerifyReport] = []
    for r_i, theta_i, R_i in zip(r_draw, theta_draw, R_draw):
        state = ScaledState(float(r_i), float(theta_i))
        config = VehicleConfig(R=float(R_i))
        try:
            decision = solve(state, config)
            closed = decision.t_escape
            integrated = integrate(state, config, tol=tol).t_escape
            best = candidate_search(state, config, n_grid)
            violation = closed - best.time if best.time is not None else math.inf
            flag = None
            if decision.intercept is not None:
                ig = decision.intercept
                flag = bool(abs(ig.arc_angle - (ig.beta - ig.omega)) <= 1e-9)
            passed = (
                abs(closed - integrated) <= 1e-6
                and best.time is not None
                and violation <= grid_bound(config.R_scaled, n_grid)
            )
            reports.append(
                VerifyReport(
                    state=state,
                    R=float(R_i),
                    closed_form_time=closed,
                    integrated_time=integrated,
                    best_candidate=best,
                    max_violation=violation,
                    arc_equals_beta_minus_omega=flag,
                    passed=passed,
                )
            )
        except EscapeError:
            reports.append(
                VerifyReport(
                    state=state,
                    R=float(R_i),
                    closed_form_time=math.nan,
                    integrated_time=math.nan,
                    best_candidate=None,
                    max_violation=math.inf,
                    arc_equals_beta_minus_omega=None,
                    passed=False,
                )
            )
    return reports
