"""Threshold touch classification, debounced event segmentation, localization,
per-trial detection, and per-sensor threshold calibration.

A sensor counts as touched when the baseline-to-filtered delta reaches its
threshold: |B - F| >= T (inclusive).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .model import COUNT_MAX, NUM_SENSORS, DetectionConfig, Region, SensorFrame, TrialLabel, region_of


def sensor_touched(b: int, f: int, t: int) -> bool:
    """Inclusive threshold rule: touched iff |b - f| >= t."""
    return abs(b - f) >= t


def frame_touch_set(frame: SensorFrame, config: DetectionConfig) -> set[int]:
    """Indices of all sensors whose delta reaches their per-sensor threshold."""
    return {
        i
        for i in range(NUM_SENSORS)
        if sensor_touched(frame.baseline[i], frame.filtered[i], config.thresholds[i])
    }


def localize(frame: SensorFrame, config: DetectionConfig) -> Region | None:
    """Region of the touched sensor with the largest delta; ties go to the
    lowest sensor index; None when nothing is touched."""
    touched = frame_touch_set(frame, config)
    if not touched:
        return None
    best = min(touched, key=lambda i: (-frame.delta(i), i))
    return region_of(best)


@dataclass(frozen=True)
class TouchEvent:
    """Debounced per-sensor touch interval."""

    sensor_index: int
    region: Region
    start_t_ms: int
    end_t_ms: int
    peak_delta: int
    frame_count: int


class _SensorEventState:
    __slots__ = ("on_run", "off_run", "open", "run_start_t", "last_touched_t", "peak", "count")

    def __init__(self) -> None:
        self.on_run = 0
        self.off_run = 0
        self.open = False
        self.run_start_t = 0
        self.last_touched_t = 0
        self.peak = 0
        self.count = 0


class Eventizer:
    """Per-stream debounce state machine; at most one open event per sensor.

    An event opens once ``debounce_on`` consecutive touched frames are seen
    (its start is the first frame of that run) and closes after
    ``debounce_off`` consecutive untouched frames (its end is the last
    touched frame). Single-owner: never share across streams.
    """

    def __init__(self, config: DetectionConfig) -> None:
        self.config = config
        self._states = [_SensorEventState() for _ in range(NUM_SENSORS)]
        self._last_t: int | None = None

    def push(self, frame: SensorFrame) -> list[TouchEvent]:
        if self._last_t is not None and frame.t_ms < self._last_t:
            raise ValueError(f"frames out of order: t_ms {frame.t_ms} after {self._last_t}")
        self._last_t = frame.t_ms
        closed: list[TouchEvent] = []
        for i in range(NUM_SENSORS):
            st = self._states[i]
            delta = frame.delta(i)
            touched = delta >= self.config.thresholds[i]
            if touched:
                if st.on_run == 0 and not st.open:
                    st.run_start_t = frame.t_ms
                    st.peak = 0
                    st.count = 0
                st.on_run += 1
                st.off_run = 0
                st.count += 1
                st.peak = max(st.peak, delta)
                st.last_touched_t = frame.t_ms
                if not st.open and st.on_run >= self.config.debounce_on:
                    st.open = True
            else:
                st.on_run = 0
                if st.open:
                    st.off_run += 1
                    if st.off_run >= self.config.debounce_off:
                        closed.append(self._close(i))
                else:
                    st.off_run = 0
                    st.count = 0
                    st.peak = 0
        return closed

    def finish(self) -> list[TouchEvent]:
        """Close any event still open at end of stream."""
        return [self._close(i) for i in range(NUM_SENSORS) if self._states[i].open]

    def _close(self, i: int) -> TouchEvent:
        st = self._states[i]
        event = TouchEvent(
            sensor_index=i,
            region=region_of(i),
            start_t_ms=st.run_start_t,
            end_t_ms=st.last_touched_t,
            peak_delta=st.peak,
            frame_count=st.count,
        )
        self._states[i] = _SensorEventState()
        return event


def eventize(frames: Iterable[SensorFrame], config: DetectionConfig) -> list[TouchEvent]:
    """Segment a frame stream into debounced touch events, ordered by
    (start time, sensor index)."""
    machine = Eventizer(config)
    events: list[TouchEvent] = []
    for frame in frames:
        events.extend(machine.push(frame))
    events.extend(machine.finish())
    events.sort(key=lambda e: (e.start_t_ms, e.sensor_index))
    return events


def trial_detected(frames: Iterable[SensorFrame], label: TrialLabel, config: DetectionConfig) -> bool:
    """Frame-level verdict for one labeled trial window: detected iff any
    frame's delta on the labeled region's sensor reaches its threshold.
    No debounce is applied."""
    if label.region is None:
        raise ValueError("trial_detected requires a labeled trial (region is none)")
    i = label.region.sensor_index
    t = config.thresholds[i]
    return any(frame.delta(i) >= t for frame in frames)


def trial_peak_delta(frames: Iterable[SensorFrame], label: TrialLabel) -> int:
    """Largest delta seen on the labeled sensor over the trial window."""
    if label.region is None:
        raise ValueError("requires a labeled trial (region is none)")
    i = label.region.sensor_index
    return max((frame.delta(i) for frame in frames), default=0)


def calibrate_thresholds(idle_frames: Iterable[SensorFrame], margin: float) -> tuple[int, ...]:
    """Per-sensor thresholds from a known-idle stream:
    T_i = max(1, ceil(margin * max idle delta_i) + 1), capped at 1023.
    Guarantees zero touched frames on the calibration data itself."""
    if margin < 1:
        raise ValueError(f"margin must be >= 1: {margin!r}")
    max_delta = [0] * NUM_SENSORS
    count = 0
    for frame in idle_frames:
        count += 1
        for i in range(NUM_SENSORS):
            d = frame.delta(i)
            if d > max_delta[i]:
                max_delta[i] = d
    if count == 0:
        raise ValueError("calibration requires at least one idle frame")
    return tuple(max(1, min(COUNT_MAX, math.ceil(margin * d) + 1)) for d in max_delta)
