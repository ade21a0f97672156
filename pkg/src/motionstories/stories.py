"""Stories: finite relation sequences of two discs over the whole time line.

Under uniform motion the relation sequence of two discs is determined by the
minimum center distance relative to the two thresholds r_k + r_l and
|r_k - r_l|.  That yields a finite catalogue of stories; each story is a
qualitative motion relation, and pairing it with the current spatial relation
(plus a chronological phase for repeated labels) gives the augmented motion
relations.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum

from .kinematics import (
    UniformMotionState,
    Vec2,
    closest_approach_state,
    relative_state,
    squared_distance_poly,
)
from .rcc import DEFAULT_TOLERANCE, RccRelation, Tolerance, classify_discs

_R = RccRelation


class DegenerateMotionError(ValueError):
    """Raised when an operation needs a nonzero relative velocity."""


class Phase(Enum):
    MINUS = "-"
    PLUS = "+"
    NONE = ""

    def __str__(self) -> str:
        return self.value


class StoryId(Enum):
    # rigid singletons (DC is shared with S11)
    S02 = "S02"    # (EC)
    S03 = "S03"    # (PO)
    S04 = "S04"    # (TPP)
    S05 = "S05"    # (NTPP)
    S04I = "S04I"  # (TPPI)
    S05I = "S05I"  # (NTPPI)
    S0E = "S0E"    # (EQ)
    # non-rigid stories, ordered by increasing miss distance
    S11 = "S11"
    S12 = "S12"
    S13 = "S13"
    S14 = "S14"
    S15 = "S15"
    S14I = "S14I"
    S15I = "S15I"
    S15E = "S15E"

    def __str__(self) -> str:
        return self.value


STORY_LABELS: dict[StoryId, tuple[RccRelation, ...]] = {
    StoryId.S02: (_R.EC,),
    StoryId.S03: (_R.PO,),
    StoryId.S04: (_R.TPP,),
    StoryId.S05: (_R.NTPP,),
    StoryId.S04I: (_R.TPPI,),
    StoryId.S05I: (_R.NTPPI,),
    StoryId.S0E: (_R.EQ,),
    StoryId.S11: (_R.DC,),
    StoryId.S12: (_R.DC, _R.EC, _R.DC),
    StoryId.S13: (_R.DC, _R.EC, _R.PO, _R.EC, _R.DC),
    StoryId.S14: (_R.DC, _R.EC, _R.PO, _R.TPP, _R.PO, _R.EC, _R.DC),
    StoryId.S15: (_R.DC, _R.EC, _R.PO, _R.TPP, _R.NTPP, _R.TPP, _R.PO, _R.EC, _R.DC),
    StoryId.S14I: (_R.DC, _R.EC, _R.PO, _R.TPPI, _R.PO, _R.EC, _R.DC),
    StoryId.S15I: (_R.DC, _R.EC, _R.PO, _R.TPPI, _R.NTPPI, _R.TPPI, _R.PO, _R.EC, _R.DC),
    StoryId.S15E: (_R.DC, _R.EC, _R.PO, _R.EQ, _R.PO, _R.EC, _R.DC),
}

# Radius configurations: disc k smaller, larger, or equal (within eps) to disc l.
_CONFIG_LT = "lt"
_CONFIG_GT = "gt"
_CONFIG_EQ = "eq"

# Non-rigid stories by increasing miss distance; alternating interior regimes
# and measure-zero tangency bands.
NONRIGID_ORDER: dict[str, tuple[StoryId, ...]] = {
    _CONFIG_LT: (StoryId.S15, StoryId.S14, StoryId.S13, StoryId.S12, StoryId.S11),
    _CONFIG_GT: (StoryId.S15I, StoryId.S14I, StoryId.S13, StoryId.S12, StoryId.S11),
    _CONFIG_EQ: (StoryId.S15E, StoryId.S13, StoryId.S12, StoryId.S11),
}

_RIGID_ID: dict[str, dict[RccRelation, StoryId]] = {
    _CONFIG_LT: {
        _R.DC: StoryId.S11,
        _R.EC: StoryId.S02,
        _R.PO: StoryId.S03,
        _R.TPP: StoryId.S04,
        _R.NTPP: StoryId.S05,
    },
    _CONFIG_GT: {
        _R.DC: StoryId.S11,
        _R.EC: StoryId.S02,
        _R.PO: StoryId.S03,
        _R.TPPI: StoryId.S04I,
        _R.NTPPI: StoryId.S05I,
    },
    _CONFIG_EQ: {
        _R.DC: StoryId.S11,
        _R.EC: StoryId.S02,
        _R.PO: StoryId.S03,
        _R.EQ: StoryId.S0E,
    },
}


def radius_config(r_k: float, r_l: float, tol: Tolerance = DEFAULT_TOLERANCE) -> str:
    if not (r_k > 0 and r_l > 0 and math.isfinite(r_k) and math.isfinite(r_l)):
        raise ValueError(f"radii must be positive and finite, got {r_k!r}, {r_l!r}")
    if abs(r_k - r_l) <= tol.eps:
        return _CONFIG_EQ
    return _CONFIG_LT if r_k < r_l else _CONFIG_GT


@dataclass(frozen=True)
class TimedLabel:
    t: float
    rel: RccRelation

    def __post_init__(self) -> None:
        if not math.isfinite(self.t):
            raise ValueError(f"timestamp must be finite, got {self.t!r}")


@dataclass(frozen=True)
class TemporalSequence:
    """Consecutive-duplicate-free labels over a (possibly unbounded) interval.

    `boundaries` holds one transition instant per adjacent label pair;
    instantaneous labels repeat the instant, so values are non-decreasing.
    """

    labels: tuple[RccRelation, ...]
    interval: tuple[float, float]
    boundaries: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.labels:
            raise ValueError("a temporal sequence needs at least one label")
        for a, b in zip(self.labels, self.labels[1:]):
            if a is b:
                raise ValueError("consecutive labels must differ")
        if len(self.boundaries) != len(self.labels) - 1:
            raise ValueError("need exactly one boundary per adjacent label pair")
        for a, b in zip(self.boundaries, self.boundaries[1:]):
            if b < a:
                raise ValueError("boundaries must be non-decreasing")
        lo, hi = self.interval
        if not lo < hi and len(self.labels) > 1:
            raise ValueError("interval must have positive length")
        for b in self.boundaries:
            if not (lo <= b <= hi):
                raise ValueError("boundaries must lie inside the interval")


@dataclass(frozen=True)
class Story:
    """A temporal sequence over the whole time line, with its catalogue id.

    `boundaries` carries absolute transition instants for stories derived
    from a concrete motion state, and None for abstract catalogue members.
    """

    id: StoryId
    labels: tuple[RccRelation, ...]
    rigid: bool
    boundaries: tuple[float, ...] | None

    def __post_init__(self) -> None:
        if self.labels != STORY_LABELS[self.id]:
            raise ValueError(f"label sequence does not match story {self.id}")
        if self.rigid and len(self.labels) != 1:
            raise ValueError("rigid stories are singletons")
        if self.boundaries is not None and len(self.boundaries) != max(0, len(self.labels) - 1):
            raise ValueError("need one boundary per adjacent label pair")


@dataclass(frozen=True)
class AugmentedRelation:
    """A story paired with one of its spatial relations and its phase index.

    The phase distinguishes repeated occurrences of a label inside a story:
    MINUS before closest approach, PLUS after, NONE for unique occurrences.
    """

    story: StoryId
    rel: RccRelation
    phase: Phase

    def __post_init__(self) -> None:
        labels = STORY_LABELS[self.story]
        count = labels.count(self.rel)
        if count == 0:
            raise ValueError(f"{self.rel} does not occur in story {self.story}")
        if count == 1 and self.phase is not Phase.NONE:
            raise ValueError(f"{self.story}({self.rel}) occurs once; phase must be NONE")
        if count > 1 and self.phase is Phase.NONE:
            raise ValueError(f"{self.story}({self.rel}) repeats; phase must be +/-")

    def __str__(self) -> str:
        return f"{self.story.value}({self.rel.value}{self.phase.value})"

    _PATTERN = re.compile(r"^(S[0-9]+[IE]?)\(([A-Z]+)([+-]?)\)$")

    @classmethod
    def parse(cls, text: str) -> "AugmentedRelation":
        m = cls._PATTERN.match(text.strip())
        if m is None:
            raise ValueError(f"cannot parse augmented relation {text!r}")
        try:
            story = StoryId(m.group(1))
            rel = RccRelation(m.group(2))
        except ValueError as exc:
            raise ValueError(f"cannot parse augmented relation {text!r}: {exc}") from None
        return cls(story, rel, Phase(m.group(3)))


@dataclass(frozen=True)
class StoriesSet:
    """The realizable stories for one radius configuration."""

    rigid: frozenset[Story]
    nonrigid: frozenset[Story]
    all: tuple[Story, ...]


@dataclass(frozen=True)
class UnitVec:
    x: float
    y: float

    def __post_init__(self) -> None:
        if abs(math.hypot(self.x, self.y) - 1.0) > 1e-12:
            raise ValueError("components must have unit norm")


def compress(samples: list[TimedLabel]) -> TemporalSequence:
    """Merge consecutive duplicate labels of a chronological sample list.

    Each boundary is the first timestamp at which the new label is observed.
    """
    if not samples:
        raise ValueError("cannot compress an empty sample list")
    for a, b in zip(samples, samples[1:]):
        if b.t <= a.t:
            raise ValueError(f"timestamps must be strictly increasing at t={b.t!r}")
    labels = [samples[0].rel]
    boundaries: list[float] = []
    for s in samples[1:]:
        if s.rel is not labels[-1]:
            labels.append(s.rel)
            boundaries.append(s.t)
    return TemporalSequence(
        labels=tuple(labels),
        interval=(samples[0].t, samples[-1].t),
        boundaries=tuple(boundaries),
    )


def is_rigid(state: UniformMotionState, vel_tol: float = 0.0) -> bool:
    """True when both discs move with the same velocity (within vel_tol)."""
    _, dv = relative_state(state)
    return dv.norm() <= vel_tol


def augmented_chain(story_id: StoryId) -> tuple[AugmentedRelation, ...]:
    """The story's labels paired with phases, in chronological order."""
    labels = STORY_LABELS[story_id]
    seen: dict[RccRelation, int] = {}
    chain = []
    for rel in labels:
        if labels.count(rel) == 1:
            phase = Phase.NONE
        else:
            phase = Phase.MINUS if seen.get(rel, 0) == 0 else Phase.PLUS
        seen[rel] = seen.get(rel, 0) + 1
        chain.append(AugmentedRelation(story_id, rel, phase))
    return tuple(chain)


def _threshold_roots(a: float, b: float, c: float, theta: float) -> tuple[float, float]:
    """Epoch-relative roots of a*t^2 + b*t + c = theta^2 (clamped if grazing)."""
    disc = b * b - 4.0 * a * (c - theta * theta)
    sq = math.sqrt(max(0.0, disc))
    return (-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)


def story_of(
    state: UniformMotionState,
    tol: Tolerance = DEFAULT_TOLERANCE,
    vel_tol: float = 0.0,
) -> Story:
    """The story this motion state belongs to, with absolute transition instants."""
    r_k = state.disc_k.radius
    r_l = state.disc_l.radius
    config = radius_config(r_k, r_l, tol)
    dp, dv = relative_state(state)

    if dv.norm() <= vel_tol:
        rel = classify_discs(dp.norm(), r_k, r_l, tol)
        return Story(id=_RIGID_ID[config][rel], labels=(rel,), rigid=True, boundaries=())

    q = squared_distance_poly(state)
    t_min, d_min = closest_approach_state(state)
    assert t_min is not None
    eps = tol.eps
    r_sum = r_k + r_l
    r_diff = abs(r_k - r_l)

    # All regime tests compare the same difference against eps, so the
    # regimes partition the d_min axis exactly (no rounding slivers).
    outer_gap = d_min - r_sum
    inner_gap = d_min - r_diff
    if outer_gap > eps:
        return Story(StoryId.S11, STORY_LABELS[StoryId.S11], rigid=False, boundaries=())

    t0 = state.epoch
    outer = _threshold_roots(q.a, q.b, q.c, r_sum)
    if outer_gap >= -eps:
        sid = StoryId.S12
        rel_bounds = (t_min, t_min)
    elif config == _CONFIG_EQ:
        if d_min <= eps:
            sid = StoryId.S15E
            rel_bounds = (outer[0], outer[0], t_min, t_min, outer[1], outer[1])
        else:
            sid = StoryId.S13
            rel_bounds = (outer[0], outer[0], outer[1], outer[1])
    elif inner_gap > eps:
        sid = StoryId.S13
        rel_bounds = (outer[0], outer[0], outer[1], outer[1])
    elif inner_gap >= -eps:
        sid = StoryId.S14 if config == _CONFIG_LT else StoryId.S14I
        rel_bounds = (outer[0], outer[0], t_min, t_min, outer[1], outer[1])
    else:
        sid = StoryId.S15 if config == _CONFIG_LT else StoryId.S15I
        inner = _threshold_roots(q.a, q.b, q.c, r_diff)
        rel_bounds = (
            outer[0], outer[0], inner[0], inner[0], inner[1], inner[1], outer[1], outer[1],
        )
    return Story(
        id=sid,
        labels=STORY_LABELS[sid],
        rigid=False,
        boundaries=tuple(t0 + t for t in rel_bounds),
    )


def _label_spans(
    story: Story,
) -> list[tuple[float, float, RccRelation]]:
    """Closed span per label; instantaneous labels collapse to a point.

    Non-point spans are open at their endpoints: the boundary instant itself
    belongs to the adjacent instantaneous label.
    """
    if story.boundaries is None:
        raise ValueError("story has no concrete transition instants")
    n = len(story.labels)
    spans = []
    for i, rel in enumerate(story.labels):
        lo = story.boundaries[i - 1] if i > 0 else -math.inf
        hi = story.boundaries[i] if i < n - 1 else math.inf
        spans.append((lo, hi, rel))
    return spans


def tsr_over_interval(
    state: UniformMotionState,
    t_a: float,
    t_b: float,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> TemporalSequence:
    """Restriction of the state's story to the absolute interval [t_a, t_b]."""
    if not t_a < t_b:
        raise ValueError(f"empty or inverted interval ({t_a!r}, {t_b!r})")
    story = story_of(state, tol)
    labels: list[RccRelation] = []
    boundaries: list[float] = []
    for lo, hi, rel in _label_spans(story):
        if lo == hi:
            active = t_a <= lo <= t_b
        else:
            active = lo < t_b and hi > t_a
        if active:
            if labels:
                boundaries.append(lo)
            labels.append(rel)
    return TemporalSequence(
        labels=tuple(labels), interval=(t_a, t_b), boundaries=tuple(boundaries)
    )


def motion_rcc_relation(
    state: UniformMotionState,
    tol: Tolerance = DEFAULT_TOLERANCE,
    vel_tol: float = 0.0,
) -> StoryId:
    """The motion relation of the state: the id of the story it belongs to."""
    return story_of(state, tol, vel_tol).id


def augmented_relation(
    state: UniformMotionState,
    tol: Tolerance = DEFAULT_TOLERANCE,
    vel_tol: float = 0.0,
) -> AugmentedRelation:
    """Story plus the spatial relation currently holding, with its phase."""
    story = story_of(state, tol, vel_tol)
    dp, _ = relative_state(state)
    rel = classify_discs(dp.norm(), state.disc_k.radius, state.disc_l.radius, tol)
    if story.labels.count(rel) <= 1:
        return AugmentedRelation(story.id, rel, Phase.NONE)
    t_min, _ = closest_approach_state(state)
    assert t_min is not None
    phase = Phase.MINUS if t_min > 0 else Phase.PLUS
    return AugmentedRelation(story.id, rel, phase)


def stories_set(
    r_k: float, r_l: float, tol: Tolerance = DEFAULT_TOLERANCE
) -> StoriesSet:
    """All realizable stories for the given radii, duplicates merged."""
    config = radius_config(r_k, r_l, tol)
    rigid = frozenset(
        Story(sid, STORY_LABELS[sid], rigid=True, boundaries=None)
        for sid in _RIGID_ID[config].values()
    )
    nonrigid = frozenset(
        Story(sid, STORY_LABELS[sid], rigid=False, boundaries=None)
        for sid in NONRIGID_ORDER[config]
    )
    merged: dict[tuple[RccRelation, ...], Story] = {}
    for story in sorted(nonrigid, key=lambda s: s.id.value) + sorted(
        rigid, key=lambda s: s.id.value
    ):
        merged.setdefault(story.labels, story)
    return StoriesSet(
        rigid=rigid,
        nonrigid=nonrigid,
        all=tuple(sorted(merged.values(), key=lambda s: s.id.value)),
    )


def augmented_set(
    r_k: float, r_l: float, tol: Tolerance = DEFAULT_TOLERANCE
) -> frozenset[AugmentedRelation]:
    """Phase-indexed expansion of every story realizable for the radii."""
    out: set[AugmentedRelation] = set()
    for story in stories_set(r_k, r_l, tol).all:
        out.update(augmented_chain(story.id))
    return frozenset(out)


def extreme_relations(story: Story) -> tuple[RccRelation, RccRelation]:
    """The relations holding as t -> -inf and t -> +inf."""
    return story.labels[0], story.labels[-1]


def asymptotic_direction(state: UniformMotionState, sign: float) -> UnitVec:
    """Limit of the k-to-l connecting unit vector as t -> +/- infinity."""
    _, dv = relative_state(state)
    n = dv.norm()
    if n == 0.0:
        raise DegenerateMotionError("direction undefined: discs move rigidly")
    if sign == 0:
        raise ValueError("sign must be positive (toward +inf) or negative (toward -inf)")
    s = 1.0 if sign > 0 else -1.0
    return UnitVec(s * dv.x / n, s * dv.y / n)


def story_to_json_dict(story: Story) -> dict:
    d: dict = {"id": story.id.value, "labels": [rel.value for rel in story.labels]}
    d["boundaries"] = list(story.boundaries) if story.boundaries is not None else None
    return d


def format_story(story: Story) -> str:
    """One-line text rendering: labels with their active spans."""
    if story.boundaries is None or len(story.labels) == 1:
        return f"{story.id.value}: {story.labels[0].value} @(-inf,+inf)"
    parts = []
    for lo, hi, rel in _label_spans(story):
        if lo == hi:
            parts.append(f"{rel.value} @{lo:g}")
        else:
            lo_s = "-inf" if lo == -math.inf else f"{lo:g}"
            hi_s = "+inf" if hi == math.inf else f"{hi:g}"
            left = "(" if lo == -math.inf else "["
            right = ")" if hi == math.inf else "]"
            parts.append(f"{rel.value} @{left}{lo_s},{hi_s}{right}")
    return f"{story.id.value}: " + " ".join(parts)


# Equation-of-record listings for the canonical smaller-k configuration.
MOTION_RCC: tuple[StoryId, ...] = (
    StoryId.S02, StoryId.S03, StoryId.S04, StoryId.S05,
    StoryId.S11, StoryId.S12, StoryId.S13, StoryId.S14, StoryId.S15,
)
