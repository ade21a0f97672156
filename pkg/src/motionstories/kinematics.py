"""Closed-form kinematics of two discs in uniform planar motion.

The squared center distance of two uniformly moving discs is a quadratic
polynomial in time.  Everything downstream (relation classification, story
derivation) reduces to that polynomial and its minimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class Vec2:
    """Immutable 2-D vector (position in m or velocity in m/s by context)."""

    x: float
    y: float

    def __post_init__(self) -> None:
        _require_finite("x", self.x)
        _require_finite("y", self.y)

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def scaled(self, s: float) -> "Vec2":
        return Vec2(self.x * s, self.y * s)

    def dot(self, other: "Vec2") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Vec2") -> float:
        return self.x * other.y - self.y * other.x

    def norm_sq(self) -> float:
        return self.dot(self)

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def rotated(self, angle: float) -> "Vec2":
        c, s = math.cos(angle), math.sin(angle)
        return Vec2(c * self.x - s * self.y, s * self.x + c * self.y)


@dataclass(frozen=True)
class Disc:
    """A circular entity: center position (m) and radius (m)."""

    center: Vec2
    radius: float

    def __post_init__(self) -> None:
        _require_finite("radius", self.radius)
        if self.radius <= 0:
            raise ValueError(f"radius must be positive, got {self.radius!r}")


@dataclass(frozen=True)
class UniformMotionState:
    """Two discs with constant velocities; centers given at `epoch`."""

    disc_k: Disc
    vel_k: Vec2
    disc_l: Disc
    vel_l: Vec2
    epoch: float = 0.0

    def __post_init__(self) -> None:
        _require_finite("epoch", self.epoch)


@dataclass(frozen=True)
class QuadDistance:
    """Squared center distance d^2(t) = a*t^2 + b*t + c, t relative to epoch."""

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        for name in ("a", "b", "c"):
            _require_finite(name, getattr(self, name))
        if self.a < 0:
            raise ValueError(f"a must be non-negative, got {self.a!r}")
        if self.c < 0:
            raise ValueError(f"c must be non-negative, got {self.c!r}")
        # d^2 must stay non-negative: b^2 <= 4ac up to floating-point slack.
        if self.b * self.b > 4.0 * self.a * self.c + 1e-9 * (1.0 + 4.0 * self.a * self.c):
            raise ValueError("polynomial dips below zero: b^2 > 4ac")

    def evaluate(self, t: float) -> float:
        return (self.a * t + self.b) * t + self.c


def relative_state(state: UniformMotionState) -> tuple[Vec2, Vec2]:
    """Relative position and velocity of disc l as seen from disc k."""
    dp = state.disc_l.center - state.disc_k.center
    dv = state.vel_l - state.vel_k
    return dp, dv


def squared_distance_poly(state: UniformMotionState) -> QuadDistance:
    dp, dv = relative_state(state)
    return QuadDistance(a=dv.norm_sq(), b=2.0 * dp.dot(dv), c=dp.norm_sq())


def closest_approach(q: QuadDistance) -> tuple[float | None, float]:
    """Time of minimum center distance (epoch-relative) and that distance.

    Constant-distance motion (a == 0) has no distinguished instant and
    returns (None, sqrt(c)).
    """
    if q.a == 0.0:
        return None, math.sqrt(q.c)
    t_min = -q.b / (2.0 * q.a)
    return t_min, math.sqrt(max(0.0, q.c - q.b * q.b / (4.0 * q.a)))


def closest_approach_state(state: UniformMotionState) -> tuple[float | None, float]:
    """Like `closest_approach`, but computed from the state's geometry.

    The minimum distance is the rejection of the relative position from the
    relative velocity, |dp x dv| / |dv|, which stays accurate when the discs
    pass very close; the polynomial form c - b^2/4a cancels catastrophically
    there (absolute error ~ |dp| * sqrt(ulp), far above tangency tolerances).
    """
    dp, dv = relative_state(state)
    a = dv.norm_sq()
    if a == 0.0:
        return None, dp.norm()
    return -dp.dot(dv) / a, abs(dp.cross(dv)) / math.sqrt(a)


def center_distance_at(state: UniformMotionState, t: float) -> float:
    """Center distance at epoch-relative time t, computed from positions."""
    dp, dv = relative_state(state)
    return (dp + dv.scaled(t)).norm()


def advance(state: UniformMotionState, dt: float) -> UniformMotionState:
    """Re-epoch the state dt seconds later; the motion itself is unchanged."""
    _require_finite("dt", dt)
    return replace(
        state,
        disc_k=Disc(state.disc_k.center + state.vel_k.scaled(dt), state.disc_k.radius),
        disc_l=Disc(state.disc_l.center + state.vel_l.scaled(dt), state.disc_l.radius),
        epoch=state.epoch + dt,
    )
