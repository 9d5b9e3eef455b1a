"""Canonical study fixture: published per-cell detection counts (out of 20)
and a synthetic session log that encodes them, so the evaluation arithmetic
is exercised rather than echoed."""

from __future__ import annotations

from .model import Gesture, Region, SensorFrame, TrialLabel
from .store import SessionLog

TRIALS_PER_CELL = 20

# Detected counts out of 20 for the three evaluated sensors.
STUDY_COUNTS: dict[tuple[Region, Gesture], int] = {
    (Region.RIGHT_TRUNK, Gesture.CONTACT): 20,
    (Region.RIGHT_TRUNK, Gesture.STROKE): 18,
    (Region.RIGHT_TRUNK, Gesture.PAT): 20,
    (Region.RIGHT_TRUNK, Gesture.SCRATCH): 17,
    (Region.RIGHT_TRUNK, Gesture.POKE): 19,
    (Region.RIGHT_CHEEK, Gesture.CONTACT): 14,
    (Region.RIGHT_CHEEK, Gesture.STROKE): 12,
    (Region.RIGHT_CHEEK, Gesture.PAT): 10,
    (Region.RIGHT_CHEEK, Gesture.SCRATCH): 11,
    (Region.RIGHT_CHEEK, Gesture.POKE): 13,
    (Region.TOP_HEAD, Gesture.CONTACT): 20,
    (Region.TOP_HEAD, Gesture.STROKE): 20,
    (Region.TOP_HEAD, Gesture.PAT): 20,
    (Region.TOP_HEAD, Gesture.SCRATCH): 19,
    (Region.TOP_HEAD, Gesture.POKE): 17,
}

_REST = 512
_HIT_DELTA = 15  # comfortably above the T=10 operating point
_FRAME_PERIOD_MS = 110


def study_fixture_log(threshold: int = 10) -> SessionLog:
    """Synthetic session encoding STUDY_COUNTS: each cell holds 20 one-
    participant trials, of which the first `count` contain one frame whose
    labeled-sensor delta crosses `threshold`."""
    rows: list[tuple[SensorFrame, TrialLabel]] = []
    seq = 0
    t_ms = 0
    baseline = (_REST,) * 9

    def emit(label: TrialLabel, delta: int, sensor: int | None) -> None:
        nonlocal seq, t_ms
        filtered = list(baseline)
        if sensor is not None:
            filtered[sensor] = _REST - delta
        rows.append(
            (
                SensorFrame(seq=seq, t_ms=t_ms, filtered=tuple(filtered), baseline=baseline),
                label,
            )
        )
        seq = (seq + 1) & 0xFFFF
        t_ms += _FRAME_PERIOD_MS

    hit = max(_HIT_DELTA, threshold)
    for (region, gesture), detected in sorted(
        STUDY_COUNTS.items(), key=lambda kv: (kv[0][0].sensor_index, kv[0][1].token)
    ):
        sensor = region.sensor_index
        for k in range(TRIALS_PER_CELL):
            participant = f"p{k + 1:02d}"
            idle = TrialLabel.idle(participant)
            label = TrialLabel(gesture, region, participant)
            for _ in range(3):
                emit(idle, 0, None)
            emit(label, 0, None)
            emit(label, hit if k < detected else 0, sensor)
            emit(label, 0, None)
    return SessionLog(participant=rows[0][1].participant, rows=tuple(rows))
