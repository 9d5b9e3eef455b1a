"""CSV recording and deterministic replay of labeled sessions.

One CSV per session, UTF-8, LF newlines, header:
t_ms,seq,participant,gesture,region,f0..f8,b0..b8
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .model import (
    COUNT_MAX,
    Gesture,
    SensorFrame,
    TrialLabel,
    gesture_from_token,
    region_from_token,
)

CSV_HEADER = (
    "t_ms,seq,participant,gesture,region,"
    "f0,f1,f2,f3,f4,f5,f6,f7,f8,b0,b1,b2,b3,b4,b5,b6,b7,b8"
)


class SchemaError(ValueError):
    """CSV header does not match the session schema."""


class DataError(ValueError):
    """A CSV row violates the session schema; message names the line."""


@dataclass(frozen=True)
class SessionLog:
    """Ordered labeled frames for one recording session."""

    participant: str
    rows: tuple[tuple[SensorFrame, TrialLabel], ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        last = None
        for frame, _label in self.rows:
            if last is not None and frame.t_ms < last:
                raise ValueError("session rows must be ordered by t_ms")
            last = frame.t_ms

    def frames(self) -> list[SensorFrame]:
        return [frame for frame, _ in self.rows]


def write_csv(log: SessionLog) -> str:
    lines = [CSV_HEADER]
    for frame, label in log.rows:
        region = label.region.token if label.region is not None else "none"
        fields = [
            str(frame.t_ms),
            str(frame.seq),
            label.participant,
            label.gesture.token,
            region,
            *(str(v) for v in frame.filtered),
            *(str(v) for v in frame.baseline),
        ]
        lines.append(",".join(fields))
    return "\n".join(lines) + "\n"


def _parse_count(token: str, line_no: int, column: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise DataError(f"line {line_no}: non-integer {column}: {token!r}") from None
    if not 0 <= value <= COUNT_MAX:
        raise DataError(f"line {line_no}: {column} out of range [0, {COUNT_MAX}]: {value}")
    return value


def read_csv(text: str) -> SessionLog:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise SchemaError("empty input: missing header")
    if lines[0] != CSV_HEADER:
        raise SchemaError(f"bad header: expected {CSV_HEADER!r}, got {lines[0]!r}")
    rows: list[tuple[SensorFrame, TrialLabel]] = []
    last_t = None
    for line_no, line in enumerate(lines[1:], start=2):
        fields = line.split(",")
        if len(fields) != 23:
            raise DataError(f"line {line_no}: expected 23 fields, got {len(fields)}")
        try:
            t_ms = int(fields[0])
            seq = int(fields[1])
        except ValueError:
            raise DataError(f"line {line_no}: non-integer t_ms/seq") from None
        participant = fields[2]
        try:
            gesture = gesture_from_token(fields[3])
            region = None if fields[4] == "none" else region_from_token(fields[4])
        except ValueError as exc:
            raise DataError(f"line {line_no}: {exc}") from None
        filtered = tuple(_parse_count(fields[5 + i], line_no, f"f{i}") for i in range(9))
        baseline = tuple(_parse_count(fields[14 + i], line_no, f"b{i}") for i in range(9))
        if last_t is not None and t_ms < last_t:
            raise DataError(f"line {line_no}: t_ms decreases ({t_ms} after {last_t})")
        last_t = t_ms
        try:
            frame = SensorFrame(seq=seq, t_ms=t_ms, filtered=filtered, baseline=baseline)
            label = TrialLabel(gesture=gesture, region=region, participant=participant)
        except ValueError as exc:
            raise DataError(f"line {line_no}: {exc}") from None
        rows.append((frame, label))
    participant = rows[0][1].participant if rows else ""
    return SessionLog(participant=participant, rows=tuple(rows))


def replay(log: SessionLog) -> Iterator[tuple[SensorFrame, TrialLabel]]:
    """Yield (frame, label) in order; purely data-driven, no wall clock."""
    yield from log.rows
