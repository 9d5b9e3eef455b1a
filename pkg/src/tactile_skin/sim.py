"""Hardware-in-the-loop simulator: synthesizes the five study gestures as
frame streams with a baseline tracker and configurable noise.

Gestures are waveforms of per-sensor deltas applied below the resting
filtered level (F = rest - delta), with independent rounded Gaussian noise
and a baseline that tracks slow changes but freezes during touch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .model import (
    COUNT_MAX,
    NUM_SENSORS,
    SEQ_MAX,
    Gesture,
    Region,
    RegionTopology,
    SensorFrame,
    TrialLabel,
    canonical_topology,
)
from .store import SessionLog

IDLE_GAP_FRAMES = 10


def default_region_gain() -> tuple[float, ...]:
    """Unity coupling everywhere except the cheeks, which sit on the
    suspended head and couple weakly."""
    gain = [1.0] * NUM_SENSORS
    gain[Region.LEFT_CHEEK.sensor_index] = 0.35
    gain[Region.RIGHT_CHEEK.sensor_index] = 0.35
    return tuple(gain)


@dataclass(frozen=True)
class SimParams:
    frame_period_ms: int = 110
    amplitude: int = 40
    region_gain: tuple[float, ...] = field(default_factory=default_region_gain)
    noise_sigma: float = 0.0
    rest_level: int = 512
    seed: int = 0

    def __post_init__(self):
        if self.frame_period_ms <= 0:
            raise ValueError("frame_period_ms must be > 0")
        if self.amplitude < 0:
            raise ValueError("amplitude must be >= 0")
        gains = tuple(self.region_gain)
        if len(gains) != NUM_SENSORS or any(not 0.0 <= g <= 1.0 for g in gains):
            raise ValueError("region_gain must be 9 values in [0, 1]")
        object.__setattr__(self, "region_gain", gains)
        if not 0 <= self.rest_level <= COUNT_MAX:
            raise ValueError("rest_level out of range")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be >= 0")


@dataclass(frozen=True)
class BaselineState:
    values: tuple[int, ...]
    hold_band: int = 5

    def __post_init__(self):
        vals = tuple(self.values)
        if len(vals) != NUM_SENSORS or any(not 0 <= v <= COUNT_MAX for v in vals):
            raise ValueError("baseline values must be 9 counts in range")
        object.__setattr__(self, "values", vals)


def baseline_step(state: BaselineState, filtered: Sequence[int]) -> BaselineState:
    """Move each baseline 1 count toward the filtered value while the delta is
    within the hold band; hold it otherwise so touch deltas persist."""
    new = []
    for b, f in zip(state.values, filtered):
        d = f - b
        if d != 0 and abs(d) <= state.hold_band:
            b += 1 if d > 0 else -1
        new.append(b)
    return BaselineState(tuple(new), state.hold_band)


@dataclass(frozen=True)
class GestureScript:
    """One scripted gesture: which region, how long, and (for strokes) the
    path of regions the pulse travels along."""

    gesture: Gesture
    region: Region
    duration_frames: int = 6
    stroke_path: tuple[Region, ...] | None = None

    def __post_init__(self):
        if self.gesture is Gesture.NONE:
            raise ValueError("gesture script cannot be 'none'")
        if self.duration_frames < 1:
            raise ValueError("duration_frames must be >= 1")
        if self.stroke_path is not None:
            object.__setattr__(self, "stroke_path", tuple(self.stroke_path))


def default_stroke_path(region: Region, topology: RegionTopology | None = None) -> tuple[Region, ...]:
    """A short adjacency-valid path starting at the target region."""
    topo = topology or canonical_topology()
    path = [region]
    for _ in range(2):
        options = [r for r in topo.neighbors(path[-1]) if r not in path]
        if not options:
            break
        path.append(options[0])
    return tuple(path)


def _delta_profile(script: GestureScript) -> list[dict[int, float]]:
    """Per-frame map of sensor index -> fractional delta (of amplitude)."""
    d = script.duration_frames
    i = script.region.sensor_index
    if script.gesture is Gesture.CONTACT:
        # Trapezoid: 1-frame ramps around a plateau at full amplitude.
        if d < 3:
            return [{i: 1.0} for _ in range(d)]
        return [{i: 0.5}] + [{i: 1.0}] * (d - 2) + [{i: 0.5}]
    if script.gesture is Gesture.PAT:
        # 1-frame full-amplitude taps separated by 3 idle frames.
        return [{i: 1.0} if k % 4 == 0 else {} for k in range(d)]
    if script.gesture is Gesture.SCRATCH:
        # Alternating partial/full deltas every frame.
        return [{i: 0.6} if k % 2 == 0 else {i: 1.0} for k in range(d)]
    if script.gesture is Gesture.POKE:
        # Single 2-frame pulse, idle padding if the script runs longer.
        profile = [{i: 1.0}, {i: 1.0}]
        profile.extend({} for _ in range(d - 2))
        return profile
    if script.gesture is Gesture.STROKE:
        path = script.stroke_path or default_stroke_path(script.region)
        topo = canonical_topology()
        for a, b in zip(path, path[1:]):
            if not topo.are_adjacent(a, b):
                raise ValueError(f"stroke path not adjacency-connected: {a.token} -> {b.token}")
        # Traveling 3-frame triangular pulse, one path sensor every 2 frames.
        total = 2 * (len(path) - 1) + 3
        profile: list[dict[int, float]] = [{} for _ in range(total)]
        for j, region in enumerate(path):
            s = region.sensor_index
            for offset, frac in ((0, 0.5), (1, 1.0), (2, 0.5)):
                k = 2 * j + offset
                profile[k][s] = max(profile[k].get(s, 0.0), frac)
        return profile
    raise ValueError(f"unsupported gesture: {script.gesture}")


class DeviceSimulator:
    """Stateful frame source; deterministic for a given (params, seed)."""

    def __init__(self, params: SimParams) -> None:
        self.params = params
        self._rng = np.random.default_rng(params.seed)
        self._baseline = BaselineState((params.rest_level,) * NUM_SENSORS)
        self._seq = 0
        self._t_ms = 0

    def _emit(self, deltas: dict[int, float]) -> SensorFrame:
        p = self.params
        noise = self._rng.normal(0.0, p.noise_sigma, NUM_SENSORS) if p.noise_sigma > 0 else np.zeros(NUM_SENSORS)
        filtered = []
        for i in range(NUM_SENSORS):
            depth = p.amplitude * deltas.get(i, 0.0) * p.region_gain[i]
            f = int(round(p.rest_level - depth + noise[i]))
            filtered.append(min(COUNT_MAX, max(0, f)))
        frame = SensorFrame(
            seq=self._seq,
            t_ms=self._t_ms,
            filtered=tuple(filtered),
            baseline=self._baseline.values,
        )
        self._baseline = baseline_step(self._baseline, filtered)
        self._seq = (self._seq + 1) & SEQ_MAX
        self._t_ms += p.frame_period_ms
        return frame

    def idle(self, n: int) -> list[SensorFrame]:
        return [self._emit({}) for _ in range(n)]

    def gesture(self, script: GestureScript) -> list[SensorFrame]:
        return [self._emit(deltas) for deltas in _delta_profile(script)]


def synth_gesture(script: GestureScript, params: SimParams) -> list[SensorFrame]:
    """Synthesize one gesture from a fresh simulator state."""
    return DeviceSimulator(params).gesture(script)


def run_session_sim(plan: Sequence[tuple[TrialLabel, GestureScript]], params: SimParams) -> SessionLog:
    """Assemble a labeled session: a 10-frame idle gap before each trial,
    then the trial's gesture frames carrying its label."""
    plan = list(plan)
    if not plan:
        raise ValueError("session plan is empty")
    sim = DeviceSimulator(params)
    rows: list[tuple[SensorFrame, TrialLabel]] = []
    participant = plan[0][0].participant
    for label, script in plan:
        if label.region is None:
            raise ValueError("plan labels must name a region")
        idle_label = TrialLabel.idle(label.participant)
        rows.extend((frame, idle_label) for frame in sim.idle(IDLE_GAP_FRAMES))
        rows.extend((frame, label) for frame in sim.gesture(script))
    return SessionLog(participant=participant, rows=tuple(rows))
