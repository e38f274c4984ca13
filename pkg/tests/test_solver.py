"""Strategy classification, closed-form escape times, decision records,
mirror reduction, and physical-unit scaling."""

from __future__ import annotations

import math

import pytest
from hypothesis import given, settings, strategies as st

import dubins_escape as de
from dubins_escape import (
    DomainError,
    OnBoundaryInward,
    ScaledState,
    StartOutside,
    StrategyTag,
    VehicleConfig,
)

R02 = VehicleConfig(R=0.2)
R075 = VehicleConfig(R=0.75)
R10 = VehicleConfig(R=1.0)

interior_r = st.floats(0.05, 0.99)
headings = st.floats(0.0, math.pi)
radii = st.floats(0.05, 3.0)


class TestClassify:
    def test_radial_heading_is_straight(self):
        assert de.classify(ScaledState(0.3, 0.0), 0.2) is StrategyTag.STRAIGHT

    def test_inner_tangent_point_is_turn_straight(self):
        assert de.classify(ScaledState(0.5, math.pi / 2), 0.2) is StrategyTag.TURN_STRAIGHT

    def test_outer_tangent_point_is_turn_only(self):
        assert de.classify(ScaledState(0.5, math.pi / 2), 1.0) is StrategyTag.TURN_ONLY

    def test_boundary_tie_goes_to_turn_only(self):
        # sigma2 = 1 exactly: 0.25 + 2*0.5*0.75 = 1
        assert de.classify(ScaledState(0.5, math.pi / 2), 0.75) is StrategyTag.TURN_ONLY

    def test_negative_heading_rejected(self):
        with pytest.raises(DomainError):
            de.classify(ScaledState(0.5, -0.3), 0.2)

    def test_outside_rejected(self):
        with pytest.raises(StartOutside):
            de.classify(ScaledState(1.2, 0.3), 0.2)

    def test_codes(self):
        assert StrategyTag.STRAIGHT.code == 0
        assert StrategyTag.TURN_STRAIGHT.code == 1
        assert StrategyTag.TURN_ONLY.code == 2
        assert StrategyTag.TURN_STRAIGHT.value == "turn-straight"

    @settings(max_examples=200, deadline=None)
    @given(interior_r, st.floats(1e-6, math.pi), radii)
    def test_classification_follows_tangent_distance(self, r, theta, R):
        state = ScaledState(r, theta)
        tag = de.classify(state, R)
        if de.tangent_norm(state, R) < 1.0:
            assert tag is StrategyTag.TURN_STRAIGHT
        else:
            assert tag is StrategyTag.TURN_ONLY


class TestClosedForms:
    def test_straight_time_exact(self):
        assert de.escape_time_straight(ScaledState(0.3, 0.0), R02) == 0.7

    def test_straight_requires_radial_heading(self):
        with pytest.raises(DomainError):
            de.escape_time_straight(ScaledState(0.3, 0.1), R02)

    def test_turn_straight_pinned(self):
        t = de.escape_time_turn_straight(ScaledState(0.5, math.pi / 2), R02)
        assert t == pytest.approx(0.5853885318218329, abs=5e-15)

    def test_turn_only_pinned(self):
        t = de.escape_time_turn_only(ScaledState(0.5, math.pi / 2), R10)
        assert t == pytest.approx(0.7227342478134157, abs=5e-15)
        assert t == pytest.approx(math.acos(0.75), abs=5e-15)

    def test_regime_formulas_agree_on_the_boundary_curve(self):
        # sigma2 = 1: the arc-then-straight time degenerates to the pure
        # arc time (zero straight segment), whichever formula is used
        state = ScaledState(0.5, math.pi / 2)
        t_ts = de.escape_time_turn_straight(state, R075)
        t_to = de.escape_time_turn_only(state, R075)
        assert abs(t_ts - t_to) <= 1e-9
        assert t_ts == pytest.approx(0.75 * (math.pi / 2 - math.asin(0.6)), abs=1e-12)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(0.05, 0.95), st.floats(1e-3, math.pi - 1e-3))
    def test_agreement_anywhere_on_the_boundary_curve(self, r_scale, theta):
        # construct R so that the state sits exactly on the regime boundary
        h = (1.0 - r_scale * r_scale) / (2.0 * r_scale)
        R = h / math.sin(theta)
        if not 1e-3 < R < 1e3:
            return
        state = ScaledState(r_scale, theta)
        config = VehicleConfig(R=R)
        t_ts = de.escape_time_turn_straight(state, config)
        t_to = de.escape_time_turn_only(state, config)
        assert t_ts == pytest.approx(t_to, abs=1e-8)


class TestSolveDecision:
    def test_straight_decision(self):
        d = de.solve(ScaledState(0.3, 0.0), R02)
        assert d.tag is StrategyTag.STRAIGHT
        assert d.t_escape == 0.7
        assert (d.exit_point.x, d.exit_point.y) == (1.0, 0.0)
        assert d.exit_heading_theta == 0.0
        assert d.turn is None and d.intercept is None
        assert not d.mirrored

    def test_turn_straight_decision(self):
        d = de.solve(ScaledState(0.5, math.pi / 2), R02)
        assert d.tag is StrategyTag.TURN_STRAIGHT
        assert d.t_escape == pytest.approx(0.5853885318218329, abs=5e-15)
        assert d.turn.phi == 0.2897517014360475
        assert d.exit_point.x == pytest.approx(math.cos(d.turn.phi), abs=1e-15)
        assert d.exit_point.y == pytest.approx(math.sin(d.turn.phi), abs=1e-15)
        assert d.exit_heading_theta == 0.0
        assert d.intercept is None

    def test_turn_only_decision(self):
        d = de.solve(ScaledState(0.5, math.pi / 2), R10)
        assert d.tag is StrategyTag.TURN_ONLY
        assert d.t_escape == pytest.approx(0.7227342478134157, abs=5e-15)
        assert d.intercept is not None
        assert d.exit_point.x == pytest.approx(0.75, abs=1e-12)
        assert d.exit_point.y == pytest.approx(0.6614378277661477, abs=1e-12)
        assert 0.0 < d.exit_heading_theta < math.pi / 2

    def test_turn_only_exit_heading_matches_integration(self):
        d = de.solve(ScaledState(0.5, math.pi / 2), R10)
        traj = de.integrate(ScaledState(0.5, math.pi / 2), R10)
        assert d.exit_heading_theta == pytest.approx(traj.samples[-1].theta, abs=1e-6)

    def test_exit_heading_is_on_usable_part(self):
        for r, theta, R in [(0.5, math.pi / 2, 1.0), (0.8, 2.0, 1.0), (0.9, 0.3, 2.0)]:
            d = de.solve(ScaledState(r, theta), VehicleConfig(R=R))
            assert de.usable_part(d.exit_heading_theta)


class TestMirrorSymmetry:
    def test_mirror_reduce(self):
        reduced, flag = de.mirror_reduce(ScaledState(0.5, -0.3))
        assert (reduced.r, reduced.theta, flag) == (0.5, 0.3, True)
        reduced, flag = de.mirror_reduce(ScaledState(0.5, 0.3))
        assert (reduced.theta, flag) == (0.3, False)
        reduced, flag = de.mirror_reduce(ScaledState(0.5, math.pi))
        assert (reduced.theta, flag) == (math.pi, False)

    @settings(max_examples=200, deadline=None)
    @given(interior_r, st.floats(1e-6, math.pi - 1e-6), radii)
    def test_time_is_bitwise_even_in_heading(self, r, theta, R):
        config = VehicleConfig(R=R)
        t_pos = de.solve(ScaledState(r, theta), config).t_escape
        t_neg = de.solve(ScaledState(r, -theta), config).t_escape
        assert t_pos == t_neg

    def test_mirrored_decision_reflects_geometry(self):
        d_pos = de.solve(ScaledState(0.5, math.pi / 2), R02)
        d_neg = de.solve(ScaledState(0.5, -math.pi / 2), R02)
        assert d_neg.mirrored and not d_pos.mirrored
        assert d_neg.t_escape == d_pos.t_escape
        assert d_neg.exit_point.x == d_pos.exit_point.x
        assert d_neg.exit_point.y == -d_pos.exit_point.y
        assert d_neg.turn.phi == -d_pos.turn.phi
        assert d_neg.turn.center_O.y == -d_pos.turn.center_O.y
        assert d_neg.exit_heading_theta == -d_pos.exit_heading_theta

    def test_mirrored_turn_only_reflects_intercept(self):
        d_pos = de.solve(ScaledState(0.9, 0.3), VehicleConfig(R=2.0))
        d_neg = de.solve(ScaledState(0.9, -0.3), VehicleConfig(R=2.0))
        assert d_neg.intercept.alpha == -d_pos.intercept.alpha
        assert d_neg.intercept.exit_point.y == -d_pos.intercept.exit_point.y
        assert d_neg.intercept.arc_angle == d_pos.intercept.arc_angle
        assert d_neg.intercept.beta == d_pos.intercept.beta


class TestBoundaryStarts:
    def test_outward_boundary_start_is_free(self):
        d = de.solve(ScaledState(1.0, 0.3), R02)
        assert d.t_escape == 0.0
        assert (d.exit_point.x, d.exit_point.y) == (1.0, 0.0)
        assert d.exit_heading_theta == 0.3

    def test_inward_or_tangent_boundary_start_rejected(self):
        for theta in (math.pi / 2, -math.pi / 2, 2.0, math.pi):
            with pytest.raises(OnBoundaryInward):
                de.solve(ScaledState(1.0, theta), R02)

    def test_start_outside_rejected(self):
        with pytest.raises(StartOutside):
            de.solve(ScaledState(1.1, 0.0), R02)


class TestPhysicalUnits:
    def test_times_and_lengths_scale(self):
        scaled = de.solve(ScaledState(0.5, math.pi / 2), R02)
        config = VehicleConfig(R=0.2 * 2.0, rho=2.0, ve=0.5)
        physical = de.solve(ScaledState(0.5 * 2.0, math.pi / 2), config)
        factor = 2.0 / 0.5  # rho / ve
        assert physical.t_escape == pytest.approx(factor * scaled.t_escape, rel=1e-12)
        assert physical.exit_point.x == pytest.approx(2.0 * scaled.exit_point.x, rel=1e-12)
        assert physical.exit_point.y == pytest.approx(2.0 * scaled.exit_point.y, rel=1e-12)
        assert physical.turn.sigma2 == pytest.approx(2.0 * scaled.turn.sigma2, rel=1e-12)
        # angles are dimensionless and must not scale
        assert physical.turn.phi == pytest.approx(scaled.turn.phi, rel=1e-12)
        assert physical.exit_heading_theta == scaled.exit_heading_theta

    def test_interior_classification_uses_scaled_radius(self):
        config = VehicleConfig(R=0.4, rho=2.0)
        assert de.solve(ScaledState(0.6, 0.0), config).tag is StrategyTag.STRAIGHT
        with pytest.raises(StartOutside):
            de.solve(ScaledState(2.5, 0.0), config)


class TestAgainstIndependentRoutes:
    @settings(max_examples=100, deadline=None)
    @given(interior_r, headings, radii)
    def test_time_always_at_least_the_straight_line_lower_bound(self, r, theta, R):
        # no path beats moving at unit speed along the shortest ray out
        t = de.solve(ScaledState(r, theta), VehicleConfig(R=R)).t_escape
        assert t >= (1.0 - r) - 1e-12

    @settings(max_examples=100, deadline=None)
    @given(interior_r, st.floats(1e-4, math.pi), radii)
    def test_time_is_strictly_worse_off_the_radial(self, r, theta, R):
        t = de.solve(ScaledState(r, theta), VehicleConfig(R=R)).t_escape
        assert t > 1.0 - r
