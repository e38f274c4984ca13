"""
Mapping the whole disk: strategy regions and escape-time contours
=================================================================

Instead of solving one state at a time, ``raster`` sweeps a grid over
(r, theta) and records, at every node, which maneuver is optimal and how
long escape takes.  ``boundary_overlay`` draws the analytic curve where
the turn-straight and turn-only regions meet, and ``time_contours``
traces level sets of the escape time through the grid.

Everything here is exactly the machinery behind the command line's
``map`` subcommand; this script drives it as a library.
"""

import math

import numpy as np

from dubins_escape import (
    SENTINEL_CODE,
    boundary_overlay,
    raster,
    time_contours,
)

# ----------------------------------------------------------------------
# Rasterize the field
# ----------------------------------------------------------------------
# 129 radial x 129 angular nodes over r in (0, 1], theta in [-pi, pi].
# An odd angular count places a row exactly on theta = 0, so the
# straight strategy shows up as its own (measure-zero) stripe.

grid = raster(nr=129, ntheta=129, R=0.2)

print(f"r axis:     {grid.r_axis[0]:.4f} .. {grid.r_axis[-1]:.4f}  ({grid.r_axis.size} nodes)")
print(f"theta axis: {grid.theta_axis[0]:+.4f} .. {grid.theta_axis[-1]:+.4f}  ({grid.theta_axis.size} nodes)")

codes, counts = np.unique(grid.strategy, return_counts=True)
names = {-1: "no-escape sentinel", 0: "straight", 1: "turn-straight", 2: "turn-only"}
print("\nstrategy census over the grid:")
for code, count in zip(codes, counts):
    print(f"  {code:+d}  {names[int(code)]:18s} {count:6d} nodes")

# Sentinels mark the only states with no way out: sitting exactly on the
# rim while pointing inward (|theta| >= pi/2 at r = 1).  Their time is
# NaN and their strategy code is -1.
sentinel = grid.strategy == SENTINEL_CODE
print(f"\nsentinel nodes: {int(sentinel.sum())}, all at r = 1 pointing inward")
print(f"escape time range elsewhere: {np.nanmin(grid.t_escape):.4f} .. {np.nanmax(grid.t_escape):.4f}")

# The field is mirror symmetric: turning left out of theta < 0 mirrors
# turning right out of theta > 0, node for node.
flipped = grid.t_escape[::-1, :]
same = np.array_equal(grid.t_escape, flipped, equal_nan=True)
print(f"t(r, -theta) == t(r, theta) node-for-node: {same}")

# ----------------------------------------------------------------------
# The analytic regime boundary
# ----------------------------------------------------------------------
overlay = boundary_overlay(R=0.2, n_samples=129)
print(f"\nboundary overlay: {overlay.shape[0]} points, "
      f"r in [{overlay[:, 0].min():.4f}, {overlay[:, 0].max():.4f}]")
# Its minimum sits at theta = +/- pi/2 where the turning circle reaches
# deepest into the disk: r = hypot(R, 1) - R.
print(f"deepest reach: r = {math.hypot(0.2, 1.0) - 0.2:.6f} (analytic)")

# ----------------------------------------------------------------------
# Escape-time level sets
# ----------------------------------------------------------------------
levels = [0.25, 0.5, 0.75, 1.0]
contours = time_contours(grid, levels)
print("\ncontour polylines per level:")
for level in levels:
    segs = contours[level]
    pts = sum(seg.shape[0] for seg in segs)
    print(f"  t = {level:4.2f}: {len(segs)} polyline(s), {pts} vertices")

# ----------------------------------------------------------------------
# Optional picture: the field in the physical plane
# ----------------------------------------------------------------------
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.colors import ListedColormap
except ImportError:
    print("\nmatplotlib not installed; skipping the figure.")
else:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4.2))

    # left: strategy code in (theta, r) coordinates with the overlay
    cmap = ListedColormap(["#cccccc", "#ffd166", "#06a77d", "#3066be"])
    ax1.pcolormesh(
        grid.theta_axis,
        grid.r_axis,
        grid.strategy.T,
        cmap=cmap,
        vmin=-1.5,
        vmax=2.5,
        shading="nearest",
    )
    ax1.plot(overlay[:, 1], overlay[:, 0], "k--", lw=1.2, label="analytic boundary")
    ax1.set_xlabel("theta (rad)")
    ax1.set_ylabel("r")
    ax1.set_title("strategy regions (gold: turn-straight, green: turn-only)")
    ax1.legend(loc="lower left", fontsize=8)

    # right: escape time with level sets
    mesh = ax2.pcolormesh(grid.theta_axis, grid.r_axis, grid.t_escape.T, shading="nearest")
    for level in levels:
        for seg in contours[level]:
            ax2.plot(seg[:, 1], seg[:, 0], "w-", lw=1.0)
    fig.colorbar(mesh, ax=ax2, label="t_escape")
    ax2.set_xlabel("theta (rad)")
    ax2.set_title("escape time with level sets")

    fig.tight_layout()
    out = __file__.rsplit(".", 1)[0] + ".png"
    fig.savefig(out, dpi=120)
    print(f"\nwrote {out}")
