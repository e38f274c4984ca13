"""Command-line interface.

Subcommands: ``solve`` (strategy decision as JSON), ``trajectory``
(forward simulation as CSV), ``map`` (strategy/time raster as CSV, or
contour curves, or a PGM image of the strategy codes),
``characteristics`` (one retrograde path as CSV), and ``verify``
(closed-form vs oracle cross-check, JSON summary).

Exit codes: 0 success, 1 domain or integration error (with a one-line
JSON description on stdout), 2 usage error, 3 verification failure.
Identical argument vectors, including the seed, produce byte-identical
output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .atlas import FieldGrid, SENTINEL_CODE, boundary_overlay, raster, time_contours
from .characteristics import emit_characteristic
from .errors import EscapeError
from .geometry import ScaledState, VehicleConfig
from .oracle import SampleSpec, verify
from .simulate import integrate
from .solver import StrategyDecision, solve


def _fmt(value: float) -> str:
    """Decimal text with 17 significant digits; NaN prints as 'nan'."""
    return f"{value:.17g}"


def _point_json(point) -> dict:
    return {"x": point.x, "y": point.y}


def _decision_json(decision: StrategyDecision) -> dict:
    payload: dict = {
        "strategy": decision.tag.value,
        "t_escape": decision.t_escape,
        "mirrored": decision.mirrored,
        "exit": _point_json(decision.exit_point),
        "exit_heading_theta": decision.exit_heading_theta,
    }
    if decision.turn is not None:
        tg = decision.turn
        payload["phi"] = tg.phi
        payload["tangent"] = {
            "x": tg.tangent_norm * math.cos(tg.phi),
            "y": tg.tangent_norm * math.sin(tg.phi),
        }
        payload["turn"] = {
            "center": _point_json(tg.center_O),
            "norm_O": tg.norm_O,
            "sigma1": tg.sigma1,
            "sigma2": tg.sigma2,
            "tangent_norm": tg.tangent_norm,
        }
    else:
        payload["turn"] = None
    if decision.intercept is not None:
        ig = decision.intercept
        payload["intercept"] = {
            "alpha": ig.alpha,
            "delta": ig.delta,
            "beta": ig.beta,
            "omega": ig.omega,
            "arc_angle": ig.arc_angle,
            "point": _point_json(ig.exit_point),
        }
    else:
        payload["intercept"] = None
    return payload


def _trajectory_csv(trajectory) -> str:
    lines = ["t,r,theta,x,y,u"]
    for s in trajectory.samples:
        lines.append(
            f"{_fmt(s.t)},{_fmt(s.r)},{_fmt(s.theta)},{_fmt(s.x)},{_fmt(s.y)},{_fmt(s.u)}"
        )
    return "\n".join(lines) + "\n"


def _characteristic_csv(path) -> str:
    lines = ["tau,r,theta,lambda_r,lambda_theta,u,h_residual"]
    for s in path.samples:
        lines.append(
            f"{_fmt(s.tau)},{_fmt(s.r)},{_fmt(s.theta)},{_fmt(s.lambda_r)},"
            f"{_fmt(s.lambda_theta)},{_fmt(s.u)},{_fmt(s.h_residual)}"
        )
    return "\n".join(lines) + "\n"


def _field_csv(grid: FieldGrid) -> str:
    lines = ["theta,r,strategy,t_escape"]
    for j, theta in enumerate(grid.theta_axis):
        for i, r in enumerate(grid.r_axis):
            lines.append(
                f"{_fmt(theta)},{_fmt(r)},{int(grid.strategy[j, i])},"
                f"{_fmt(grid.t_escape[j, i])}"
            )
    return "\n".join(lines) + "\n"


def _curves_csv(boundary: np.ndarray, contour_map: dict) -> str:
    lines = ["curve_id,theta,r"]
    for r, theta in boundary:
        lines.append(f"boundary,{_fmt(theta)},{_fmt(r)}")
    for level, polylines in contour_map.items():
        for k, polyline in enumerate(polylines):
            curve_id = f"level-{level:g}-{k}"
            for r, theta in polyline:
                lines.append(f"{curve_id},{_fmt(theta)},{_fmt(r)}")
    return "\n".join(lines) + "\n"


def _pgm_bytes(grid: FieldGrid) -> bytes:
    codes = grid.strategy.astype(np.int16)
    codes[codes == SENTINEL_CODE] = 3  # sentinel cells get the spare value
    ntheta, nr = codes.shape
    header = f"P5\n{nr} {ntheta}\n3\n".encode("ascii")
    return header + codes.astype(np.uint8).tobytes()


def _report_records(reports) -> list[dict]:
    records = []
    for rep in reports:
        best = rep.best_candidate
        records.append(
            {
                "r": rep.state.r,
                "theta": rep.state.theta,
                "R": rep.R,
                "closed": rep.closed_form_time,
                "integrated": rep.integrated_time,
                "best_candidate": None
                if best is None
                else {
                    "family": best.family,
                    "parameter": best.parameter,
                    "time": best.time,
                },
                "pass": rep.passed,
            }
        )
    return records


def _emit_text(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="ascii") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _emit_bytes(data: bytes, out: str | None) -> None:
    if out:
        with open(out, "wb") as handle:
            handle.write(data)
    else:
        sys.stdout.buffer.write(data)


def _add_state_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--r", type=float, required=True, help="start radius")
    parser.add_argument(
        "--theta", type=float, required=True, help="start heading (radians unless --deg)"
    )
    parser.add_argument(
        "--deg", action="store_true", help="interpret input angles as degrees"
    )


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--R", type=float, required=True, help="minimum turn radius")
    parser.add_argument(
        "--rho", type=float, default=1.0, help="region radius (default 1: scaled units)"
    )
    parser.add_argument(
        "--ve", type=float, default=1.0, help="vehicle speed (default 1: scaled units)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dubins-escape",
        description="Minimum-time escape of a turn-rate-constrained vehicle "
        "from a circular region",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="classify a state and print the decision")
    _add_state_flags(p_solve)
    _add_config_flags(p_solve)
    p_solve.add_argument("--out", help="write JSON here instead of stdout")

    p_traj = sub.add_parser("trajectory", help="integrate the closed-loop escape")
    _add_state_flags(p_traj)
    _add_config_flags(p_traj)
    p_traj.add_argument("--dt-max", type=float, default=None, help="sample spacing bound")
    p_traj.add_argument("--tol", type=float, default=1e-9, help="integrator tolerance")
    p_traj.add_argument("--out", help="write CSV here instead of stdout")

    p_map = sub.add_parser("map", help="raster the strategy and time field")
    p_map.add_argument("--nr", type=int, required=True, help="radial node count")
    p_map.add_argument("--ntheta", type=int, required=True, help="angular node count")
    _add_config_flags(p_map)
    mode = p_map.add_mutually_exclusive_group()
    mode.add_argument(
        "--contours",
        type=_contour_list,
        help="comma-separated time levels; output becomes contour curves "
        "(with the analytic strategy boundary) instead of the field",
    )
    mode.add_argument(
        "--pgm", action="store_true", help="output the strategy raster as binary PGM"
    )
    p_map.add_argument("--out", help="write here instead of stdout")

    p_char = sub.add_parser(
        "characteristics", help="trace one retrograde optimal characteristic"
    )
    p_char.add_argument(
        "--theta-f", type=float, required=True, help="terminal heading seed"
    )
    p_char.add_argument("--tau-max", type=float, required=True, help="retrograde horizon")
    p_char.add_argument("--tol", type=float, default=1e-9, help="integrator tolerance")
    p_char.add_argument("--R", type=float, required=True, help="minimum turn radius")
    p_char.add_argument(
        "--deg", action="store_true", help="interpret --theta-f as degrees"
    )
    p_char.add_argument("--out", help="write CSV here instead of stdout")

    p_verify = sub.add_parser(
        "verify", help="cross-check closed forms against integration and search"
    )
    p_verify.add_argument("--count", type=int, required=True, help="number of samples")
    p_verify.add_argument("--seed", type=int, required=True, help="RNG seed")
    p_verify.add_argument("--r-min", type=float, default=0.05)
    p_verify.add_argument("--r-max", type=float, default=0.99)
    p_verify.add_argument("--theta-min", type=float, default=0.0)
    p_verify.add_argument("--theta-max", type=float, default=math.pi)
    p_verify.add_argument("--R-min", type=float, default=0.05)
    p_verify.add_argument("--R-max", type=float, default=3.0)
    p_verify.add_argument("--n-grid", type=int, default=2000, help="sweep resolution")
    p_verify.add_argument("--tol", type=float, default=1e-9, help="integrator tolerance")
    p_verify.add_argument("--out", help="write the full report JSON here")

    return parser


def _input_angle(value: float, deg: bool) -> float:
    return math.radians(value) if deg else value


def _contour_list(text: str) -> list[float]:
    try:
        levels = [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad contour level list {text!r}") from exc
    if not levels:
        raise argparse.ArgumentTypeError("contour level list is empty")
    return levels


def _cmd_solve(args) -> int:
    state = ScaledState(args.r, _input_angle(args.theta, args.deg))
    config = VehicleConfig(R=args.R, rho=args.rho, ve=args.ve)
    decision = solve(state, config)
    _emit_text(json.dumps(_decision_json(decision)) + "\n", args.out)
    return 0


def _cmd_trajectory(args) -> int:
    state = ScaledState(args.r, _input_angle(args.theta, args.deg))
    config = VehicleConfig(R=args.R, rho=args.rho, ve=args.ve)
    trajectory = integrate(state, config, dt_max=args.dt_max, tol=args.tol)
    _emit_text(_trajectory_csv(trajectory), args.out)
    return 0


def _cmd_map(args) -> int:
    grid = raster(args.nr, args.ntheta, R=args.R, rho=args.rho, ve=args.ve)
    if args.pgm:
        _emit_bytes(_pgm_bytes(grid), args.out)
    elif args.contours is not None:
        contour_map = time_contours(grid, args.contours)
        boundary = boundary_overlay(args.R, rho=args.rho)
        _emit_text(_curves_csv(boundary, contour_map), args.out)
    else:
        _emit_text(_field_csv(grid), args.out)
    return 0


def _cmd_characteristics(args) -> int:
    path = emit_characteristic(
        _input_angle(args.theta_f, args.deg), args.R, args.tau_max, tol=args.tol
    )
    _emit_text(_characteristic_csv(path), args.out)
    return 0


def _cmd_verify(args) -> int:
    spec = SampleSpec(
        count=args.count,
        seed=args.seed,
        r_range=(args.r_min, args.r_max),
        theta_range=(args.theta_min, args.theta_max),
        R_range=(args.R_min, args.R_max),
    )
    reports = verify(spec, n_grid=args.n_grid, tol=args.tol)
    if args.out:
        _emit_text(json.dumps(_report_records(reports), indent=1) + "\n", args.out)
    failed = sum(1 for rep in reports if not rep.passed)
    finite = [rep.max_violation for rep in reports if math.isfinite(rep.max_violation)]
    summary = {
        "passed": len(reports) - failed,
        "failed": failed,
        "max_violation": max(finite) if finite else None,
    }
    sys.stdout.write(json.dumps(summary) + "\n")
    return 3 if failed else 0


_COMMANDS = {
    "solve": _cmd_solve,
    "trajectory": _cmd_trajectory,
    "map": _cmd_map,
    "characteristics": _cmd_characteristics,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except EscapeError as exc:
        sys.stdout.write(json.dumps({"error": exc.code, "message": str(exc)}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
