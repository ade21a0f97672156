import math

import pytest
from hypothesis import given, strategies as st

from motionstories.kinematics import (
    Disc,
    QuadDistance,
    UniformMotionState,
    Vec2,
    advance,
    center_distance_at,
    closest_approach,
    closest_approach_state,
    relative_state,
    squared_distance_poly,
)

finite = st.floats(min_value=-100, max_value=100, allow_nan=False)


def make_state(px, py, vx, vy, qx, qy, wx, wy, rk=1.0, rl=2.0, epoch=0.0):
    return UniformMotionState(
        disc_k=Disc(Vec2(px, py), rk),
        vel_k=Vec2(vx, vy),
        disc_l=Disc(Vec2(qx, qy), rl),
        vel_l=Vec2(wx, wy),
        epoch=epoch,
    )


class TestVec2:
    def test_arithmetic(self):
        a, b = Vec2(1, 2), Vec2(3, -4)
        assert a + b == Vec2(4, -2)
        assert a - b == Vec2(-2, 6)
        assert a.scaled(2) == Vec2(2, 4)
        assert a.dot(b) == -5
        assert a.cross(b) == -10
        assert b.norm() == 5
        assert b.norm_sq() == 25

    def test_rotation_preserves_norm(self):
        v = Vec2(3, 4).rotated(1.234)
        assert v.norm() == pytest.approx(5)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            Vec2(math.nan, 0)
        with pytest.raises(ValueError):
            Vec2(0, math.inf)


class TestDisc:
    def test_rejects_non_positive_radius(self):
        with pytest.raises(ValueError):
            Disc(Vec2(0, 0), 0.0)
        with pytest.raises(ValueError):
            Disc(Vec2(0, 0), -1.0)


class TestQuadDistance:
    def test_evaluate(self):
        q = QuadDistance(1.0, -2.0, 2.0)
        assert q.evaluate(0) == 2.0
        assert q.evaluate(1) == 1.0

    def test_rejects_negative_leading_or_constant(self):
        with pytest.raises(ValueError):
            QuadDistance(-1.0, 0.0, 1.0)
        with pytest.raises(ValueError):
            QuadDistance(1.0, 0.0, -1.0)

    def test_rejects_polynomial_dipping_below_zero(self):
        with pytest.raises(ValueError):
            QuadDistance(1.0, -10.0, 1.0)


class TestPolynomial:
    def test_known_coefficients(self):
        state = make_state(0, 0, 2, 0, 10, 3, -1, 0)
        q = squared_distance_poly(state)
        assert (q.a, q.b, q.c) == (9.0, -60.0, 109.0)

    def test_closest_approach_known(self):
        q = QuadDistance(9.0, -60.0, 109.0)
        t_min, d_min = closest_approach(q)
        assert t_min == pytest.approx(10 / 3)
        assert d_min == pytest.approx(3.0)

    def test_rigid_motion_has_no_minimum_instant(self):
        state = make_state(0, 0, 1, 1, 5, 0, 1, 1)
        t_min, d_min = closest_approach(squared_distance_poly(state))
        assert t_min is None
        assert d_min == pytest.approx(5.0)
        t2, d2 = closest_approach_state(state)
        assert t2 is None and d2 == pytest.approx(5.0)

    @given(finite, finite, finite, finite, finite, finite, finite, finite)
    def test_polynomial_matches_positions(self, px, py, vx, vy, qx, qy, wx, wy):
        state = make_state(px, py, vx, vy, qx, qy, wx, wy)
        q = squared_distance_poly(state)
        for t in (-2.5, 0.0, 0.7, 3.0):
            assert q.evaluate(t) == pytest.approx(
                center_distance_at(state, t) ** 2, abs=1e-6, rel=1e-9
            )

    @given(finite, finite, finite, finite, finite, finite, finite, finite)
    def test_minimum_really_is_minimal(self, px, py, vx, vy, qx, qy, wx, wy):
        state = make_state(px, py, vx, vy, qx, qy, wx, wy)
        t_min, d_min = closest_approach_state(state)
        if t_min is None:
            return
        for dt in (-1.0, -0.1, 0.1, 1.0):
            assert center_distance_at(state, t_min + dt) >= d_min - 1e-7

    def test_stable_minimum_for_near_collision(self):
        # A grazing pass with tiny miss distance: the geometric form keeps
        # nanometer accuracy where the polynomial form loses it entirely.
        h = 3e-9
        state = make_state(-5.0, h, 1, 0, 0, 0, 0, 0)
        _, d_min = closest_approach_state(state)
        assert d_min == pytest.approx(h, rel=1e-9)


class TestRelativeState:
    def test_direction_is_k_to_l(self):
        dp, dv = relative_state(make_state(1, 1, 1, 0, 4, 5, 0, 1))
        assert dp == Vec2(3, 4)
        assert dv == Vec2(-1, 1)


class TestAdvance:
    def test_shifts_positions_and_epoch(self):
        state = make_state(0, 0, 2, 0, 10, 3, -1, 0)
        later = advance(state, 2.0)
        assert later.disc_k.center == Vec2(4, 0)
        assert later.disc_l.center == Vec2(8, 3)
        assert later.epoch == 2.0

    @given(finite, st.floats(min_value=-10, max_value=10, allow_nan=False))
    def test_advance_preserves_the_motion(self, t, dt):
        state = make_state(0, 0, 2, 0, 10, 3, -1, 0)
        later = advance(state, dt)
        # Same absolute instant, same distance.
        assert center_distance_at(later, t) == pytest.approx(
            center_distance_at(state, t + dt), abs=1e-9
        )
