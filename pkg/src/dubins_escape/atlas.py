"""Rasterization of the (r, theta) cylinder into strategy regions and
the time-to-escape field.

The grid covers r in (0, 1] (uniform, boundary included, center
excluded) and theta in [-pi, pi] (uniform, both endpoints included,
axis exactly antisymmetric so mirrored nodes are exact negations of
each other).  Each node records the strategy code and escape time from
the solver; nodes where the solver rejects the state (the boundary
nodes heading inward) carry the sentinel code -1 with a NaN time.
Helpers produce the analytic strategy-boundary polyline and
marching-squares level sets of the time field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .geometry import ScaledState, VehicleConfig, strategy_boundary_curve
from .solver import solve

SENTINEL_CODE = -1


@dataclass(frozen=True, eq=False)
class FieldGrid:
    """Raster of the escape problem over the state cylinder.

    ``strategy`` and ``t_escape`` have shape (ntheta, nr): theta is the
    outer (row) axis, matching the row-major serialization order.
    """

    r_axis: np.ndarray
    theta_axis: np.ndarray
    strategy: np.ndarray
    t_escape: np.ndarray


def raster(
    nr: int, ntheta: int, R: float, rho: float = 1.0, ve: float = 1.0
) -> FieldGrid:
    """Evaluate the solver at every grid node.

    The lower half-plane is filled by mirroring the upper half: the
    solver reduces negative headings to their mirror image internally,
    so the copied cells are bitwise identical to direct evaluation.
    """
    if nr < 2 or ntheta < 2:
        raise DomainError(f"grid needs nr, ntheta >= 2, got {nr}, {ntheta}")
    config = VehicleConfig(R=R, rho=rho, ve=ve)

    r_axis = np.linspace(0.0, 1.0, nr + 1)[1:]
    raw = np.linspace(-math.pi, math.pi, ntheta)
    theta_axis = 0.5 * (raw - raw[::-1])  # exact antisymmetry: a[j] == -a[n-1-j]

    strategy = np.empty((ntheta, nr), dtype=np.int8)
    t_escape = np.empty((ntheta, nr), dtype=np.float64)

    for j, theta in enumerate(theta_axis):
        if theta < 0.0:
            continue
        for i, r_s in enumerate(r_axis):
            try:
                decision = solve(ScaledState(r_s * rho, theta), config)
                strategy[j, i] = decision.tag.code
                t_escape[j, i] = decision.t_escape
            except DomainError:
                strategy[j, i] = SENTINEL_CODE
                t_escape[j, i] = math.nan
    for j, theta in enumerate(theta_axis):
        if theta < 0.0:
            partner = ntheta - 1 - j
            strategy[j] = strategy[partner]
            t_escape[j] = t_escape[partner]

    return FieldGrid(
        r_axis=r_axis, theta_axis=theta_axis, strategy=strategy, t_escape=t_escape
    )


def boundary_overlay(R: float, rho: float = 1.0, n_samples: int = 257) -> np.ndarray:
    """Analytic strategy-boundary polyline over theta in [-pi, pi].

    Returns an (N, 2) array of (r, theta) rows in scaled units, theta
    ascending; the positive-theta half comes from the tangent-on-the-
    boundary locus and the negative half is its mirror image.
    """
    if n_samples < 2:
        raise DomainError(f"n_samples must be at least 2, got {n_samples}")
    theta_half = np.linspace(0.0, math.pi, n_samples)
    half = strategy_boundary_curve(R / rho, 1.0, theta_half)
    r_half = np.minimum([p[0] for p in half], 1.0)
    r_full = np.concatenate([r_half[:0:-1], r_half])
    theta_full = np.concatenate([-theta_half[:0:-1], theta_half])
    return np.column_stack([r_full, theta_full])


# marching-squares case table: cell corner bits (value > level) to the
# pairs of crossed edges; edges are 0 bottom, 1 right, 2 top, 3 left
_CASES: dict[int, tuple[tuple[int, int], ...]] = {
    0: (),
    1: ((0, 3),),
    2: ((0, 1),),
    3: ((1, 3),),
    4: ((1, 2),),
    6: ((0, 2),),
    7: ((2, 3),),
    8: ((2, 3),),
    9: ((0, 2),),
    11: ((1, 2),),
    12: ((1, 3),),
    13: ((0, 1),),
    14: ((0, 3),),
    15: (),
}


def _edge_point(edge, level, corners, values):
    a, b = ((0, 1), (1, 2), (2, 3), (3, 0))[edge]
    va, vb = values[a], values[b]
    s = (level - va) / (vb - va)
    ax, ay = corners[a]
    bx, by = corners[b]
    return (ax + s * (bx - ax), ay + s * (by - ay))


def _key(point):
    return (round(point[0], 10), round(point[1], 10))


def _stitch(segments: list[tuple[tuple, tuple]]) -> list[np.ndarray]:
    adjacency: dict[tuple, list[int]] = {}
    for idx, (p1, p2) in enumerate(segments):
        adjacency.setdefault(_key(p1), []).append(idx)
        adjacency.setdefault(_key(p2), []).append(idx)

    used = [False] * len(segments)
    polylines = []
    for start in range(len(segments)):
        if used[start]:
            continue
        used[start] = True
        chain = [segments[start][0], segments[start][1]]
        for head in (1, 0):
            # walk outward from each end of the seed segment in turn
            while True:
                tip = chain[-1] if head else chain[0]
                next_idx = None
                for cand in adjacency.get(_key(tip), ()):
                    if not used[cand]:
                        next_idx = cand
                        break
                if next_idx is None:
                    break
                used[next_idx] = True
                p1, p2 = segments[next_idx]
                far = p2 if _key(p1) == _key(tip) else p1
                if head:
                    chain.append(far)
                else:
                    chain.insert(0, far)
        polylines.append(np.array(chain))
    return polylines


def time_contours(
    grid: FieldGrid, levels: list[float]
) -> dict[float, list[np.ndarray]]:
    """Marching-squares level sets of the escape-time field.

    Returns, per requested level, a list of polylines as (N, 2) arrays
    of (r, theta) rows with vertices linearly interpolated on cell
    edges.  Cells touching NaN (sentinel) nodes are skipped; levels
    outside the field range produce empty lists.
    """
    for level in levels:
        if not (math.isfinite(level) and level >= 0.0):
            raise DomainError(f"contour levels must be nonnegative, got {level}")
    t = grid.t_escape
    r_ax, th_ax = grid.r_axis, grid.theta_axis
    out: dict[float, list[np.ndarray]] = {}
    for level in levels:
        segments: list[tuple[tuple, tuple]] = []
        for j in range(len(th_ax) - 1):
            for i in range(len(r_ax) - 1):
                values = (t[j, i], t[j, i + 1], t[j + 1, i + 1], t[j + 1, i])
                if any(math.isnan(v) for v in values):
                    continue
                idx = sum(1 << k for k, v in enumerate(values) if v > level)
                if idx in (0, 15):
                    continue
                corners = (
                    (r_ax[i], th_ax[j]),
                    (r_ax[i + 1], th_ax[j]),
                    (r_ax[i + 1], th_ax[j + 1]),
                    (r_ax[i], th_ax[j + 1]),
                )
                if idx in (5, 10):
                    center_above = sum(values) / 4.0 > level
                    if idx == 5:
                        pairs = ((0, 1), (2, 3)) if center_above else ((0, 3), (1, 2))
                    else:
                        pairs = ((0, 3), (1, 2)) if center_above else ((0, 1), (2, 3))
                else:
                    pairs = _CASES[idx]
                for ea, eb in pairs:
                    p1 = _edge_point(ea, level, corners, values)
                    p2 = _edge_point(eb, level, corners, values)
                    if _key(p1) != _key(p2):
                        segments.append((p1, p2))
        out[level] = _stitch(segments)
    return out
