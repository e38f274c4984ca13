"""
Driving the optimal feedback law: sampled escape trajectories
=============================================================

The closed-form solver hands back a time and an exit point; this script
actually drives the vehicle there.  ``integrate`` applies the optimal
feedback law -- hard-over toward smaller |theta|, then straight once the
heading is radial -- and integrates the motion with event detection, so
the returned trajectory records the exact switch ("ReachedUL", the
moment the heading becomes radial) and the exact escape ("Escaped",
r = 1).

For each strategy we compare the integrated escape time against the
closed form; they agree to ~1e-9, which is the whole point: the formulas
and the dynamics describe the same motion.
"""

import math

from dubins_escape import ScaledState, VehicleConfig, integrate, solve

config = VehicleConfig(R=0.2)

cases = [
    ("straight", ScaledState(0.3, 0.0)),
    ("turn-straight", ScaledState(0.5, math.pi / 2)),
    ("turn-straight (mirrored)", ScaledState(0.5, -math.pi / 2)),
    ("turn-only", ScaledState(0.97, math.pi / 2)),
]

# ----------------------------------------------------------------------
# Closed form vs. integration, case by case
# ----------------------------------------------------------------------
print(f"{'case':26s} {'closed form':>12s} {'integrated':>12s} {'|diff|':>9s}")
print("-" * 64)
trajectories = []
for label, state in cases:
    decision = solve(state, config)
    traj = integrate(state, config, dt_max=1e-3)
    diff = abs(decision.t_escape - traj.t_escape)
    trajectories.append((label, decision, traj))
    print(f"{label:26s} {decision.t_escape:12.9f} {traj.t_escape:12.9f} {diff:9.2e}")

# ----------------------------------------------------------------------
# Reading the event log
# ----------------------------------------------------------------------
# A turn-straight trajectory has two events: the control switch where
# the heading reaches theta = 0, and the escape where r reaches 1.
_, decision, traj = trajectories[1]
print()
print("event log for (0.5, pi/2):")
for ev in traj.events:
    print(f"  t = {ev.t:.9f}  {ev.kind:10s}  r = {ev.state.r:.9f}, theta = {ev.state.theta:+.9f}")

# The switch state pins down where the straight leg begins; its radius
# equals the turning circle's near-tangent length sigma2.
switch = traj.events[0].state
print(f"  switch radius {switch.r:.9f} vs sigma2 {decision.turn.sigma2:.9f}")

# Along the whole path |theta| never grows: the optimal law always turns
# the heading toward radial, and once there it stays there.
worst_rise = max(
    abs(b.theta) - abs(a.theta) for a, b in zip(traj.samples, traj.samples[1:])
)
print(f"  largest increase of |theta| along the path: {worst_rise:.2e} (never positive)")

# ----------------------------------------------------------------------
# Samples carry both polar and planar coordinates
# ----------------------------------------------------------------------
print()
print("first samples of the turn-only path (0.97, pi/2):")
print("      t        r        theta        x        y       u")
for s in trajectories[3][2].samples[::40][:5]:
    print(f"  {s.t:7.4f}  {s.r:7.4f}  {s.theta:+8.4f}  {s.x:7.4f}  {s.y:7.4f}  {s.u:+4.1f}")

# ----------------------------------------------------------------------
# Optional picture: the paths in the plane
# ----------------------------------------------------------------------
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("\nmatplotlib not installed; skipping the figure.")
else:
    import numpy as np

    fig, ax = plt.subplots(figsize=(5, 5))
    rim = np.linspace(0, 2 * math.pi, 256)
    ax.plot(np.cos(rim), np.sin(rim), "k-", lw=1.5)
    for label, decision, traj in trajectories:
        xs = [s.x for s in traj.samples]
        ys = [s.y for s in traj.samples]
        (line,) = ax.plot(xs, ys, lw=1.8, label=label)
        ax.plot(xs[0], ys[0], "o", color=line.get_color(), ms=5)
        ax.plot(decision.exit_point.x, decision.exit_point.y, "x", color=line.get_color(), ms=7)
    ax.set_aspect("equal")
    ax.set_title("minimum-time escape paths (dots: start, crosses: exit)")
    ax.legend(loc="lower left", fontsize=8)
    fig.tight_layout()
    out = __file__.rsplit(".", 1)[0] + ".png"
    fig.savefig(out, dpi=120)
    print(f"\nwrote {out}")
