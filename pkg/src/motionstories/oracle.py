"""Brute-force references: sampled story reconstruction and phase-space sweeps.

Nothing here is used on the classification fast path; these functions exist to
cross-check the analytic story derivation and to validate derived structures.
The sampler works purely from positional distances (no polynomial algebra).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .kinematics import (
    Disc,
    UniformMotionState,
    Vec2,
    center_distance_at,
    relative_state,
)
from .rcc import DEFAULT_TOLERANCE, RccRelation, Tolerance, classify_discs
from .stories import TemporalSequence, TimedLabel, compress, story_of

# Bisection refinement floor, relative to the local time scale.  Tangency
# labels occupy eps-wide distance bands, so boundaries are resolved until the
# bracketing interval is far below the band's time width (well past the
# dt/1024 a pure grid refinement would give).
_REFINE_REL = 1e-13


@dataclass(frozen=True)
class SamplingPlan:
    t_start: float
    t_end: float
    dt: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.t_start) and math.isfinite(self.t_end) and self.t_start < self.t_end):
            raise ValueError("need a finite interval with t_start < t_end")
        if not (math.isfinite(self.dt) and 0 < self.dt <= (self.t_end - self.t_start) / 10):
            raise ValueError("dt must be positive and at most a tenth of the interval")


def default_plan(state: UniformMotionState, n_points: int = 801) -> SamplingPlan:
    """A window around closest approach wide enough to reach DC at both ends."""
    from .kinematics import closest_approach, squared_distance_poly

    _, dv = relative_state(state)
    speed = dv.norm()
    if speed == 0.0:
        return SamplingPlan(-1.0, 1.0, 2.0 / (n_points - 1))
    t_min, _ = closest_approach(squared_distance_poly(state))
    r_sum = state.disc_k.radius + state.disc_l.radius
    half = (r_sum + 1.0) / speed + 1.0
    return SamplingPlan(t_min - half, t_min + half, 2.0 * half / (n_points - 1))


def _classify_at(state: UniformMotionState, t: float, tol: Tolerance) -> RccRelation:
    return classify_discs(
        center_distance_at(state, t), state.disc_k.radius, state.disc_l.radius, tol
    )


def _refine_minimum(state: UniformMotionState, lo: float, hi: float) -> float:
    """Golden-section minimum of the center distance on [lo, hi]."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc = center_distance_at(state, c)
    fd = center_distance_at(state, d)
    for _ in range(120):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = center_distance_at(state, c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = center_distance_at(state, d)
        if b - a <= _REFINE_REL * max(1.0, abs(a), abs(b)):
            break
    return (a + b) / 2.0


def _resolve_boundary(
    state: UniformMotionState,
    t0: float,
    r0: RccRelation,
    t1: float,
    r1: RccRelation,
    tol: Tolerance,
    out: list[TimedLabel],
) -> None:
    """Recursively bisect a label change, discovering any bands in between."""
    width_floor = _REFINE_REL * max(1.0, abs(t0), abs(t1))
    if t1 - t0 <= width_floor:
        out.append(TimedLabel(t1, r1))
        return
    tm = (t0 + t1) / 2.0
    rm = _classify_at(state, tm, tol)
    if rm is r0:
        _resolve_boundary(state, tm, rm, t1, r1, tol, out)
    elif rm is r1:
        _resolve_boundary(state, t0, r0, tm, rm, tol, out)
    else:
        _resolve_boundary(state, t0, r0, tm, rm, tol, out)
        _resolve_boundary(state, tm, rm, t1, r1, tol, out)


def sample_story(
    state: UniformMotionState,
    plan: SamplingPlan,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> TemporalSequence:
    """Reconstruct the relation sequence by sampling distances on a grid.

    Grid classification alone misses relations holding only for an instant
    (tangencies) with probability one, so the sampler additionally refines
    the distance minimum and recursively bisects every detected boundary.
    Times are epoch-relative, like the plan.
    """
    n = int(math.floor((plan.t_end - plan.t_start) / plan.dt)) + 1
    grid = [plan.t_start + i * plan.dt for i in range(n)]
    if grid[-1] < plan.t_end:
        grid.append(plan.t_end)
    samples = [TimedLabel(t, _classify_at(state, t, tol)) for t in grid]

    # Locate the minimum-distance instant; tangency stories are visible only there.
    dists = [center_distance_at(state, t) for t in grid]
    i_min = int(np.argmin(dists))
    lo = grid[max(0, i_min - 1)]
    hi = grid[min(len(grid) - 1, i_min + 1)]
    if lo < hi:
        t_at_min = _refine_minimum(state, lo, hi)
        if plan.t_start < t_at_min < plan.t_end and all(
            abs(t_at_min - s.t) > 0 for s in samples
        ):
            samples.append(TimedLabel(t_at_min, _classify_at(state, t_at_min, tol)))
            samples.sort(key=lambda s: s.t)

    refined: list[TimedLabel] = [samples[0]]
    for prev, cur in zip(samples, samples[1:]):
        if cur.rel is prev.rel:
            refined.append(cur)
        else:
            _resolve_boundary(state, prev.t, prev.rel, cur.t, cur.rel, tol, refined)
    return compress(refined)


def canonical_state(
    r_k: float,
    r_l: float,
    miss_distance: float,
    time_to_approach: float,
    speed: float = 1.0,
) -> UniformMotionState:
    """A state with disc l motionless at the origin and disc k approaching
    along a horizontal line with the given perpendicular miss distance.

    `time_to_approach` is the (signed) time from the epoch until closest
    approach: positive means the discs are still approaching.
    """
    if speed <= 0:
        raise ValueError("speed must be positive")
    if miss_distance < 0:
        raise ValueError("miss distance must be non-negative")
    # Relative position of l from k at the epoch.
    dp = Vec2(-speed * time_to_approach, miss_distance)
    return UniformMotionState(
        disc_k=Disc(Vec2(-dp.x, -dp.y), r_k),
        vel_k=Vec2(-speed, 0.0),
        disc_l=Disc(Vec2(0.0, 0.0), r_l),
        vel_l=Vec2(0.0, 0.0),
        epoch=0.0,
    )


def rigid_state(r_k: float, r_l: float, distance: float, vel: Vec2 = Vec2(0.0, 0.0)) -> UniformMotionState:
    """Both discs share `vel`; centers a fixed `distance` apart."""
    if distance < 0:
        raise ValueError("distance must be non-negative")
    return UniformMotionState(
        disc_k=Disc(Vec2(-distance, 0.0), r_k),
        vel_k=vel,
        disc_l=Disc(Vec2(0.0, 0.0), r_l),
        vel_l=vel,
        epoch=0.0,
    )


def _targeted_states(r_k: float, r_l: float, tol: Tolerance) -> list[UniformMotionState]:
    """States landing exactly on each miss-distance regime, plus rigid ones."""
    r_sum = r_k + r_l
    r_diff = abs(r_k - r_l)
    inner_mid = r_diff / 2.0 if r_diff > tol.eps else 0.0
    states = [
        canonical_state(r_k, r_l, h, time_to_approach=3.0)
        for h in (r_sum + 1.0, r_sum, (r_diff + r_sum) / 2.0, r_diff, inner_mid)
    ]
    rigid_distances = [r_sum + 1.0, r_sum, (r_diff + r_sum) / 2.0]
    if r_diff > tol.eps:
        rigid_distances += [r_diff, r_diff / 2.0]
    else:
        rigid_distances += [0.0]
    states += [rigid_state(r_k, r_l, d) for d in rigid_distances]
    return states


def sweep_stories(
    r_k: float,
    r_l: float,
    n_states: int,
    seed: int = 20170720,
    tol: Tolerance = DEFAULT_TOLERANCE,
    targeted: bool = True,
) -> frozenset[tuple[RccRelation, ...]]:
    """Deduplicated label sequences found by a pseudo-random phase-space sweep.

    Random sampling alone never hits the measure-zero tangency regimes or the
    rigid (equal-velocity) subspace, so targeted samples landing exactly on
    each threshold are mixed in by default.
    """
    if n_states < 1:
        raise ValueError("need at least one state")
    rng = np.random.default_rng(seed)
    found: set[tuple[RccRelation, ...]] = set()
    for _ in range(n_states):
        px, py, qx, qy = rng.uniform(-50.0, 50.0, size=4)
        speeds = rng.uniform(0.0, 10.0, size=2)
        angles = rng.uniform(0.0, 2.0 * math.pi, size=2)
        state = UniformMotionState(
            disc_k=Disc(Vec2(px, py), r_k),
            vel_k=Vec2(speeds[0] * math.cos(angles[0]), speeds[0] * math.sin(angles[0])),
            disc_l=Disc(Vec2(qx, qy), r_l),
            vel_l=Vec2(speeds[1] * math.cos(angles[1]), speeds[1] * math.sin(angles[1])),
        )
        found.add(story_of(state, tol).labels)
    if targeted:
        for state in _targeted_states(r_k, r_l, tol):
            found.add(story_of(state, tol).labels)
    return frozenset(found)
