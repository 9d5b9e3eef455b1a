"""Detection-rate evaluation: per-gesture/per-region tables, region averages,
global threshold sweeps, and false-positive measurement."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .detect import frame_touch_set, trial_detected
from .model import (
    GESTURES,
    NUM_SENSORS,
    DetectionConfig,
    Gesture,
    Region,
    SensorFrame,
    TrialLabel,
)
from .store import SessionLog


def round_half_away(x: float) -> int:
    """Round to nearest integer, halves away from zero."""
    if x >= 0:
        return int(x + 0.5)
    return -int(-x + 0.5)


@dataclass(frozen=True)
class RateCell:
    detected: int
    trials: int

    @property
    def percent(self) -> int:
        if self.trials == 0:
            raise ValueError("cell has no trials")
        return round_half_away(100.0 * self.detected / self.trials)


@dataclass(frozen=True)
class RateTable:
    """Regions x gestures detection counts; the shape of the study's table."""

    cells: dict[tuple[Region, Gesture], RateCell]

    def regions(self) -> list[Region]:
        seen = {region for region, _ in self.cells}
        return sorted(seen, key=lambda r: r.sensor_index)

    def to_text(self) -> str:
        regions = self.regions()
        width = max(len(r.token) for r in regions) if regions else 6
        header = " " * width + "".join(f"{g.token:>9}" for g in GESTURES)
        lines = [header]
        for region in regions:
            cols = []
            for gesture in GESTURES:
                cell = self.cells.get((region, gesture))
                cols.append(f"{cell.percent:>8}%" if cell else f"{'-':>9}")
            lines.append(f"{region.token:<{width}}" + "".join(cols))
        return "\n".join(lines)

    def to_csv(self) -> str:
        lines = ["gesture,region,detected,trials,percent"]
        for region in self.regions():
            for gesture in GESTURES:
                cell = self.cells.get((region, gesture))
                if cell is None:
                    continue
                lines.append(
                    f"{gesture.token},{region.token},{cell.detected},{cell.trials},{cell.percent}"
                )
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Trial:
    """A maximal run of frames sharing one non-none label."""

    label: TrialLabel
    frames: tuple[SensorFrame, ...]


def trials_of(log: SessionLog) -> list[Trial]:
    trials: list[Trial] = []
    current: TrialLabel | None = None
    frames: list[SensorFrame] = []
    for frame, label in log.rows:
        if label == current:
            frames.append(frame)
            continue
        if current is not None and not current.is_idle:
            trials.append(Trial(current, tuple(frames)))
        current = label
        frames = [frame]
    if current is not None and not current.is_idle:
        trials.append(Trial(current, tuple(frames)))
    return trials


def detection_table(log: SessionLog, config: DetectionConfig) -> RateTable:
    """Group the log's labeled trials by (gesture, region) and count how many
    were detected on their labeled sensor."""
    trials = trials_of(log)
    if not trials:
        raise ValueError("session log contains no labeled trials")
    detected: dict[tuple[Region, Gesture], int] = {}
    totals: dict[tuple[Region, Gesture], int] = {}
    for trial in trials:
        key = (trial.label.region, trial.label.gesture)
        totals[key] = totals.get(key, 0) + 1
        if trial_detected(trial.frames, trial.label, config):
            detected[key] = detected.get(key, 0) + 1
    cells = {key: RateCell(detected.get(key, 0), totals[key]) for key in totals}
    return RateTable(cells)


def region_summary(table: RateTable) -> dict[Region, int]:
    """Unweighted mean of the five gesture percentages per region, rounded to
    the nearest integer (halves away from zero)."""
    summary: dict[Region, int] = {}
    for region in table.regions():
        percents = []
        for gesture in GESTURES:
            cell = table.cells.get((region, gesture))
            if cell is None:
                raise ValueError(f"region {region.token} is missing a {gesture.token} cell")
            percents.append(cell.percent)
        summary[region] = round_half_away(sum(percents) / len(percents))
    return summary


@dataclass(frozen=True)
class SweepCurve:
    """(threshold, detection_rate, false_positive_rate) for a global sweep."""

    entries: tuple[tuple[int, float, float], ...]


def threshold_sweep(log: SessionLog, thresholds: Sequence[int]) -> SweepCurve:
    thresholds = list(thresholds)
    if not thresholds:
        raise ValueError("threshold list is empty")
    if any(not 0 <= t <= 1024 for t in thresholds):
        raise ValueError("sweep thresholds must lie in [0, 1024]")
    if any(b <= a for a, b in zip(thresholds, thresholds[1:])):
        raise ValueError("sweep thresholds must be strictly increasing")
    trials = trials_of(log)
    idle_frames = [frame for frame, label in log.rows if label.is_idle]
    entries = []
    for t in thresholds:
        if trials:
            hits = sum(
                1
                for trial in trials
                if any(f.delta(trial.label.region.sensor_index) >= t for f in trial.frames)
            )
            detection_rate = hits / len(trials)
        else:
            detection_rate = 0.0
        if idle_frames:
            fp = sum(1 for f in idle_frames if any(d >= t for d in f.deltas()))
            fp_rate = fp / len(idle_frames)
        else:
            fp_rate = 0.0
        entries.append((t, detection_rate, fp_rate))
    return SweepCurve(tuple(entries))


def false_positive_rate(idle_log: SessionLog, config: DetectionConfig) -> float:
    """Fraction of idle frames whose touch set is non-empty."""
    if any(not label.is_idle for _, label in idle_log.rows):
        raise ValueError("false_positive_rate requires an all-idle log")
    frames = idle_log.frames()
    if not frames:
        return 0.0
    positives = sum(1 for f in frames if frame_touch_set(f, config))
    return positives / len(frames)


def idle_false_positive_rate(log: SessionLog, config: DetectionConfig) -> float:
    """False-positive rate over just the idle frames of a mixed log."""
    idle = [f for f, label in log.rows if label.is_idle]
    if not idle:
        return 0.0
    return sum(1 for f in idle if frame_touch_set(f, config)) / len(idle)
