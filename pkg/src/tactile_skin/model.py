"""Shared domain types: frames, regions, labels, and detection configuration."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

NUM_SENSORS = 9
COUNT_MAX = 1023
SEQ_MAX = 0xFFFF
T_MS_MAX = 0xFFFFFFFF


class Region(Enum):
    """The nine skin regions; declaration order fixes the sensor index."""

    TOP_HEAD = "top_head"
    LEFT_CHEEK = "left_cheek"
    RIGHT_CHEEK = "right_cheek"
    LEFT_HEAD = "left_head"
    RIGHT_HEAD = "right_head"
    LEFT_TRUNK = "left_trunk"
    RIGHT_TRUNK = "right_trunk"
    FRONT_TRUNK = "front_trunk"
    BACK_TRUNK = "back_trunk"

    @property
    def sensor_index(self) -> int:
        return _REGION_INDEX[self]

    @property
    def token(self) -> str:
        return self.value


REGIONS: tuple[Region, ...] = tuple(Region)
_REGION_INDEX = {region: i for i, region in enumerate(REGIONS)}
_REGION_BY_TOKEN = {region.value: region for region in REGIONS}


def region_of(sensor_index: int) -> Region:
    """Map a sensor index 0..8 to its region (fixed bijection)."""
    if not isinstance(sensor_index, int) or not 0 <= sensor_index < NUM_SENSORS:
        raise ValueError(f"sensor index out of range: {sensor_index!r}")
    return REGIONS[sensor_index]


def region_from_token(token: str) -> Region:
    try:
        return _REGION_BY_TOKEN[token]
    except KeyError:
        raise ValueError(f"unknown region token: {token!r}") from None


class Gesture(Enum):
    CONTACT = "contact"
    STROKE = "stroke"
    PAT = "pat"
    SCRATCH = "scratch"
    POKE = "poke"
    NONE = "none"

    @property
    def token(self) -> str:
        return self.value


# The five real gestures, in canonical report order.
GESTURES: tuple[Gesture, ...] = (
    Gesture.CONTACT,
    Gesture.STROKE,
    Gesture.PAT,
    Gesture.SCRATCH,
    Gesture.POKE,
)
_GESTURE_BY_TOKEN = {g.value: g for g in Gesture}


def gesture_from_token(token: str) -> Gesture:
    try:
        return _GESTURE_BY_TOKEN[token]
    except KeyError:
        raise ValueError(f"unknown gesture token: {token!r}") from None


def _check_counts(name: str, counts) -> tuple[int, ...]:
    values = tuple(counts)
    if len(values) != NUM_SENSORS:
        raise ValueError(f"{name} must have {NUM_SENSORS} entries, got {len(values)}")
    for v in values:
        if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v <= COUNT_MAX:
            raise ValueError(f"{name} count out of range [0, {COUNT_MAX}]: {v!r}")
    return values


@dataclass(frozen=True)
class SensorFrame:
    """One 9.1 Hz sample: per-sensor filtered and baseline counts plus timing."""

    seq: int
    t_ms: int
    filtered: tuple[int, ...]
    baseline: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.seq <= SEQ_MAX:
            raise ValueError(f"seq out of range: {self.seq}")
        if not 0 <= self.t_ms <= T_MS_MAX:
            raise ValueError(f"t_ms out of range: {self.t_ms}")
        object.__setattr__(self, "filtered", _check_counts("filtered", self.filtered))
        object.__setattr__(self, "baseline", _check_counts("baseline", self.baseline))

    def delta(self, sensor_index: int) -> int:
        """|B - F| for one sensor."""
        return abs(self.baseline[sensor_index] - self.filtered[sensor_index])

    def deltas(self) -> tuple[int, ...]:
        return tuple(abs(b - f) for b, f in zip(self.baseline, self.filtered))


@dataclass(frozen=True)
class DetectionConfig:
    """Per-sensor thresholds and debounce parameters."""

    thresholds: tuple[int, ...]
    debounce_on: int = 2
    debounce_off: int = 2

    def __post_init__(self):
        values = tuple(self.thresholds)
        if len(values) != NUM_SENSORS:
            raise ValueError(f"need {NUM_SENSORS} thresholds, got {len(values)}")
        for t in values:
            if not isinstance(t, int) or isinstance(t, bool) or not 1 <= t <= COUNT_MAX:
                raise ValueError(f"threshold out of range [1, {COUNT_MAX}]: {t!r}")
        object.__setattr__(self, "thresholds", values)
        if not isinstance(self.debounce_on, int) or self.debounce_on < 1:
            raise ValueError(f"debounce_on must be >= 1: {self.debounce_on!r}")
        if not isinstance(self.debounce_off, int) or self.debounce_off < 1:
            raise ValueError(f"debounce_off must be >= 1: {self.debounce_off!r}")

    @classmethod
    def uniform(cls, threshold: int = 10, debounce_on: int = 2, debounce_off: int = 2) -> "DetectionConfig":
        return cls((threshold,) * NUM_SENSORS, debounce_on, debounce_off)


@dataclass(frozen=True)
class TrialLabel:
    """Label attached to a frame: gesture, region, and participant id."""

    gesture: Gesture
    region: Region | None
    participant: str

    def __post_init__(self):
        if (self.gesture is Gesture.NONE) != (self.region is None):
            raise ValueError("gesture is none if and only if region is none")

    @property
    def is_idle(self) -> bool:
        return self.gesture is Gesture.NONE

    @classmethod
    def idle(cls, participant: str = "") -> "TrialLabel":
        return cls(Gesture.NONE, None, participant)


@dataclass(frozen=True)
class RegionTopology:
    """Symmetric, irreflexive adjacency over the nine regions."""

    adjacency: frozenset[tuple[Region, Region]]

    def neighbors(self, region: Region) -> tuple[Region, ...]:
        found = [b for a, b in self.adjacency if a is region]
        return tuple(sorted(found, key=lambda r: r.sensor_index))

    def are_adjacent(self, a: Region, b: Region) -> bool:
        return (a, b) in self.adjacency


_ADJACENCY_TABLE: tuple[tuple[Region, Region], ...] = (
    (Region.TOP_HEAD, Region.LEFT_CHEEK),
    (Region.TOP_HEAD, Region.RIGHT_CHEEK),
    (Region.TOP_HEAD, Region.LEFT_HEAD),
    (Region.TOP_HEAD, Region.RIGHT_HEAD),
    (Region.LEFT_CHEEK, Region.LEFT_HEAD),
    (Region.RIGHT_CHEEK, Region.RIGHT_HEAD),
    (Region.LEFT_HEAD, Region.BACK_TRUNK),
    (Region.RIGHT_HEAD, Region.BACK_TRUNK),
    (Region.LEFT_CHEEK, Region.FRONT_TRUNK),
    (Region.RIGHT_CHEEK, Region.FRONT_TRUNK),
    (Region.LEFT_TRUNK, Region.FRONT_TRUNK),
    (Region.LEFT_TRUNK, Region.BACK_TRUNK),
    (Region.RIGHT_TRUNK, Region.FRONT_TRUNK),
    (Region.RIGHT_TRUNK, Region.BACK_TRUNK),
)


def canonical_topology() -> RegionTopology:
    """The fixed region adjacency used for stroke-path simulation."""
    pairs = set()
    for a, b in _ADJACENCY_TABLE:
        pairs.add((a, b))
        pairs.add((b, a))
    return RegionTopology(frozenset(pairs))
