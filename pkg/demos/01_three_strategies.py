"""
Three ways out of the disk: closed-form escape times
====================================================

A vehicle moves at unit speed inside the unit disk but cannot turn
sharper than a minimum radius R.  Its state is (r, theta): distance from
the center and the angle between its heading and the outward radial
direction.  Depending on where it starts and which way it points, the
fastest way out is one of three maneuvers:

* ``straight``       -- already aimed radially outward; just drive.
* ``turn-straight``  -- turn at full rate until the heading is radial,
  then drive straight to the rim.
* ``turn-only``      -- the turning circle itself pokes out of the disk,
  so the vehicle stays on one hard-over arc all the way to the rim.

This script classifies a handful of states, prints the closed-form
times, and walks across the regime boundary to show the two turn
formulas meeting continuously.
"""

import math

from dubins_escape import (
    ScaledState,
    VehicleConfig,
    classify,
    solve,
    strategy_boundary_curve,
    tangent_norm,
)

# ----------------------------------------------------------------------
# A tour of the three strategies
# ----------------------------------------------------------------------
# All examples use minimum turning radius R = 0.2 (in units of the disk
# radius) and the default unit disk / unit speed, so times are in units
# of (disk radius / speed).

config = VehicleConfig(R=0.2)

tour = [
    ("aimed straight out", ScaledState(r=0.3, theta=0.0)),
    ("sideways, mid-disk", ScaledState(r=0.5, theta=math.pi / 2)),
    ("aimed back inward", ScaledState(r=0.8, theta=2.8)),
    ("near the rim, sideways", ScaledState(r=0.97, theta=math.pi / 2)),
]

print("state (r, theta)            strategy        t_escape")
print("-" * 56)
for label, state in tour:
    decision = solve(state, config)
    print(
        f"({state.r:4.2f}, {state.theta:+5.2f})  {label:22s}"
        f" {decision.tag.value:14s} {decision.t_escape:.6f}"
    )

# The decision object carries the full exit geometry, not just the time.
decision = solve(ScaledState(0.5, math.pi / 2), config)
print()
print("turn-straight details for (0.5, pi/2):")
print(f"  turn center        = ({decision.turn.center_O.x:.6f}, {decision.turn.center_O.y:.6f})")
print(f"  tangent point      = ({decision.turn.sigma2:.6f} from center at angle phi)")
print(f"  heading swept      = {decision.turn.phi:.6f} rad of full-rate turn")
print(f"  exit point on rim  = ({decision.exit_point.x:.6f}, {decision.exit_point.y:.6f})")
print(f"  exit heading theta = {decision.exit_heading_theta:.6f}  (radial = 0)")

# ----------------------------------------------------------------------
# Crossing the regime boundary
# ----------------------------------------------------------------------
# The turn-straight and turn-only regimes meet where the straight leg
# shrinks to zero: the far tangent length ||T|| equals the disk radius.
# With R = 0.75 and theta = pi/2 that happens exactly at r = 0.5.  Walk r
# across the boundary and watch the time stay continuous while the
# strategy label flips.

config_wide = VehicleConfig(R=0.75)
theta = math.pi / 2

print()
print("crossing the regime boundary at R = 0.75, theta = pi/2:")
print("    r       ||T||     strategy        t_escape")
for r in (0.46, 0.48, 0.50, 0.52, 0.54):
    state = ScaledState(r, theta)
    tag = classify(state, config_wide.R)
    t = solve(state, config_wide).t_escape
    tn = tangent_norm(state, config_wide.R)
    print(f"  {r:5.2f}   {tn:7.4f}   {tag.value:14s} {t:.9f}")

# ----------------------------------------------------------------------
# The boundary curve itself
# ----------------------------------------------------------------------
# strategy_boundary_curve traces the (r, theta) locus where the two turn
# regimes meet, i.e. where the hard-over circle is internally tangent to
# the rim.

samples = [k * math.pi / 8 for k in range(9)]
curve = strategy_boundary_curve(R=0.75, rho=1.0, theta_samples=samples)
print()
print("regime boundary r(theta) at R = 0.75:")
for r, th in curve:
    print(f"  theta = {th:6.3f}   r = {r:.6f}")

# ----------------------------------------------------------------------
# Optional picture
# ----------------------------------------------------------------------
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:  # plotting is a bonus, not a requirement
    print("\nmatplotlib not installed; skipping the figure.")
else:
    import numpy as np

    fig, ax = plt.subplots(figsize=(5.5, 4))
    thetas = np.linspace(0.0, math.pi, 400)
    for R in (0.2, 0.5, 0.75, 1.0):
        pts = strategy_boundary_curve(R=R, rho=1.0, theta_samples=thetas)
        rs = [p[0] for p in pts]
        ths = [p[1] for p in pts]
        ax.plot(ths, rs, label=f"R = {R}")
    ax.set_xlabel("heading angle theta (rad)")
    ax.set_ylabel("radius r")
    ax.set_title("turn-only below, turn-straight above")
    ax.set_xlim(0, math.pi)
    ax.set_ylim(0, 1)
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    out = __file__.rsplit(".", 1)[0] + ".png"
    fig.savefig(out, dpi=120)
    print(f"\nwrote {out}")
