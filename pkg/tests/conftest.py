"""Shared fixtures.

The expensive closed-form / integration / search sweep over the seeded
1000-state sample is computed once per session and reused by the
agreement, optimality, and monotonicity acceptance tests.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np
import pytest

import dubins_escape as de

SAMPLE_COUNT = 1000
SAMPLE_SEED = 42


@dataclass(frozen=True)
class SweepRecord:
    state: de.ScaledState
    config: de.VehicleConfig
    decision: de.StrategyDecision
    trajectory: de.Trajectory
    best: de.CandidateResult


def draw_states(count: int, seed: int) -> list[tuple[float, float, float]]:
    """The (r, theta, R) sample used by the verification oracle: same
    seed, same draw order, so results line up record for record."""
    rng = np.random.default_rng(seed)
    r = rng.uniform(0.05, 0.99, count)
    theta = rng.uniform(0.0, math.pi, count)
    R = rng.uniform(0.05, 3.0, count)
    return [(float(a), float(b), float(c)) for a, b, c in zip(r, theta, R)]


@dataclass(frozen=True)
class Sweep:
    records: tuple[SweepRecord, ...]
    elapsed: float


@pytest.fixture(scope="session")
def acceptance_sweep() -> Sweep:
    start = time.perf_counter()
    records = []
    for r, theta, R in draw_states(SAMPLE_COUNT, SAMPLE_SEED):
        state = de.ScaledState(r, theta)
        config = de.VehicleConfig(R=R)
        records.append(
            SweepRecord(
                state=state,
                config=config,
                decision=de.solve(state, config),
                trajectory=de.integrate(state, config, tol=1e-9),
                best=de.candidate_search(state, config, n_grid=2000),
            )
        )
    return Sweep(records=tuple(records), elapsed=time.perf_counter() - start)
