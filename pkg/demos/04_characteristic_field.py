"""
Backwards from the rim: characteristic curves of the value function
===================================================================

Every optimal path leaves the disk through some rim point with some
final heading theta_f in (-pi/2, pi/2) -- the "usable part" of the
boundary.  ``emit_characteristic`` starts at such an exit, attaches the
terminal costate that the optimality conditions dictate, and integrates
the state *and* costate backwards in time.  The resulting curve sweeps
out the field of optimal trajectories without ever solving an
optimization problem.

Two facts make these curves trustworthy:

* the optimal Hamiltonian is conserved at zero along each curve, and
* replaying the same curve *forwards* with the feedback law reproduces
  it, point for point.

This script emits a fan of characteristics, checks both facts, and
shows a neat geometric symmetry: an arc that leaves the rim with heading
theta_f re-enters the rim (backwards) with heading pi - theta_f.
"""

import math

from dubins_escape import emit_characteristic, hamiltonian, replay_mismatch

R = 0.2
TAU_MAX = 2.0

# ----------------------------------------------------------------------
# A fan of characteristics
# ----------------------------------------------------------------------
thetas_f = [-1.2, -0.6, 0.0, 0.3, 0.6, 0.9, 1.2]

print("theta_f    samples   max|H*|     replay mismatch   final (r, theta)")
print("-" * 72)
paths = []
for theta_f in thetas_f:
    path = emit_characteristic(theta_f, R, TAU_MAX)
    worst_h = max(abs(s.h_residual) for s in path.samples)
    mismatch = replay_mismatch(path, R)
    last = path.samples[-1]
    paths.append(path)
    print(
        f"{theta_f:+6.2f}    {len(path.samples):5d}   {worst_h:9.2e}   "
        f"{mismatch:15.2e}   ({last.r:.4f}, {last.theta:+.4f})"
    )

# ----------------------------------------------------------------------
# What the samples carry
# ----------------------------------------------------------------------
# Each sample records the retrograde clock tau, the state, the costate
# (lambda_r, lambda_theta), the control in force, and the Hamiltonian
# residual.  At tau = 0 the costate is the transversality seed
# (sec theta_f, 0); backwards from there lambda_theta goes negative,
# which is exactly why the forward control is the hard right turn u = -1.

path = emit_characteristic(0.6, R, TAU_MAX)
print("\nfirst samples of the theta_f = 0.6 characteristic:")
print("     tau       r       theta    lambda_r  lambda_theta    u")
for s in path.samples[:: len(path.samples) // 6][:6]:
    print(
        f"  {s.tau:6.3f}  {s.r:7.4f}  {s.theta:+8.4f}  {s.lambda_r:9.4f}"
        f"  {s.lambda_theta:+11.6f}  {s.u:+4.1f}"
    )

# ----------------------------------------------------------------------
# The re-entry symmetry
# ----------------------------------------------------------------------
# Traced backwards, the hard-over arc is a chord of the disk: it leaves
# the rim again, and when it does the heading is the supplement of the
# exit heading.

print("\nre-entry symmetry (arc chords of the rim):")
for theta_f in (0.3, 0.6, 1.2):
    path = emit_characteristic(theta_f, R, TAU_MAX)
    resurfaced = [s for s in path.samples if s.tau > 0 and abs(s.r - 1.0) < 1e-6]
    if resurfaced:
        s = resurfaced[0]
        print(
            f"  theta_f = {theta_f:.1f}: resurfaces at theta = {s.theta:.6f}"
            f"  (pi - theta_f = {math.pi - theta_f:.6f})"
        )

# The theta_f = 0 characteristic is the degenerate case: the exit
# heading is already radial, so backing up just retraces the radial line
# and the costate never moves.
path0 = emit_characteristic(0.0, R, TAU_MAX)
last = path0.samples[-1]
print(f"\ntheta_f = 0 backs straight down the radial: ends at r = {last.r:.2e}, u = {last.u}")

# ----------------------------------------------------------------------
# Optional picture: the fan in the plane
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
    fan = np.linspace(-1.4, 1.4, 15)
    for theta_f in fan:
        path = emit_characteristic(float(theta_f), R, TAU_MAX)
        # plot in the plane: every path exits at (1, 0) by convention,
        # so the fan shows the family of ways to arrive there.
        rs = np.array([s.r for s in path.samples])
        # reconstruct the polar angle from the shadow dynamics
        thetas = np.array([s.theta for s in path.samples])
        taus = np.array([s.tau for s in path.samples])
        psi = np.concatenate(
            ([0.0], np.cumsum(np.diff(taus) * -np.sin(thetas[:-1]) / rs[:-1]))
        )
        ax.plot(rs * np.cos(psi), rs * np.sin(psi), lw=1.2)
    ax.plot([1], [0], "ko", ms=6)
    ax.set_aspect("equal")
    ax.set_title("characteristics arriving at one exit point")
    fig.tight_layout()
    out = __file__.rsplit(".", 1)[0] + ".png"
    fig.savefig(out, dpi=120)
    print(f"\nwrote {out}")
