"""Live capture service: ingests frames from a serial byte stream or the
simulator, applies detection, manages the trial lifecycle, records CSV, and
broadcasts state to subscribers.

Concurrency contract: one writer (the ingest sequence) owns all session
state behind a lock; readers get immutable snapshots; subscriber queues are
bounded and may drop broadcast frames, never recorded ones.
"""

from __future__ import annotations

import asyncio
import json
import os
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import AsyncIterator, Iterable

from .detect import frame_touch_set, localize, trial_detected, trial_peak_delta
from .model import (
    NUM_SENSORS,
    DetectionConfig,
    Gesture,
    Region,
    SensorFrame,
    TrialLabel,
    gesture_from_token,
    region_from_token,
)
from .store import SessionLog, write_csv
from .wire import DecodeDiagnostics, FrameDecoder

LOG_DIR_ENV = "TACTILE_LOG_DIR"
RATE_EMA_ALPHA = 0.2


class StateError(RuntimeError):
    """Operation not valid in the current session phase."""


@dataclass
class Snapshot:
    """Consistent view of the session at one ingest step."""

    phase: str
    participant: str | None
    trial: TrialLabel | None
    config: DetectionConfig
    frame: SensorFrame | None
    touch_set: frozenset[int]
    localization: Region | None
    diagnostics: DecodeDiagnostics
    rate_hz: float | None
    frames_ingested: int

    def to_json(self) -> dict:
        return {
            "phase": self.phase,
            "participant": self.participant,
            "trial": (
                {"gesture": self.trial.gesture.token, "region": self.trial.region.token}
                if self.trial is not None
                else None
            ),
            "thresholds": list(self.config.thresholds),
            "debounce_on": self.config.debounce_on,
            "debounce_off": self.config.debounce_off,
            "frame": (
                {
                    "seq": self.frame.seq,
                    "t_ms": self.frame.t_ms,
                    "filtered": list(self.frame.filtered),
                    "baseline": list(self.frame.baseline),
                    "deltas": list(self.frame.deltas()),
                }
                if self.frame is not None
                else None
            ),
            "touch_set": sorted(self.touch_set),
            "localization": self.localization.token if self.localization else None,
            "diagnostics": {
                "bytes_skipped": self.diagnostics.bytes_skipped,
                "crc_failures": self.diagnostics.crc_failures,
                "range_failures": self.diagnostics.range_failures,
            },
            "rate_hz": self.rate_hz,
            "frames_ingested": self.frames_ingested,
        }


class LiveSession:
    """Single-writer session engine; thread-safe via an internal lock."""

    def __init__(self, config: DetectionConfig | None = None, log_dir: str | None = None):
        self._lock = threading.Lock()
        self._config = config or DetectionConfig.uniform(10)
        self._log_dir = Path(log_dir or os.environ.get(LOG_DIR_ENV, "."))
        self._phase = "idle"
        self._participant: str | None = None
        self._trial: TrialLabel | None = None
        self._trial_frames: list[SensorFrame] = []
        self._rows: list[tuple[SensorFrame, TrialLabel]] = []
        self._latest: SensorFrame | None = None
        self._touch: frozenset[int] = frozenset()
        self._local: Region | None = None
        self.diagnostics = DecodeDiagnostics()
        self._rate_hz: float | None = None
        self._ema_interval: float | None = None
        self._last_t_ms: int | None = None
        self._frames = 0
        self._last_touch_empty = True
        self._subscribers: list[asyncio.Queue] = []
        self._loop: asyncio.AbstractEventLoop | None = None

    # -- control commands ---------------------------------------------------

    def start_session(self, participant: str) -> dict:
        with self._lock:
            if self._phase != "idle":
                raise StateError(f"cannot start session in phase {self._phase}")
            if not participant:
                raise ValueError("participant must be non-empty")
            self._phase = "session_open"
            self._participant = participant
            self._rows = []
            return {"ok": True, "participant": participant}

    def stop_session(self) -> dict:
        with self._lock:
            if self._phase == "idle":
                raise StateError("no session open")
            if self._phase == "trial_running":
                raise StateError("stop the active trial first")
            log = SessionLog(participant=self._participant or "", rows=tuple(self._rows))
            self._log_dir.mkdir(parents=True, exist_ok=True)
            path = self._log_dir / f"session_{self._participant}_{int(time.time())}.csv"
            path.write_text(write_csv(log), encoding="utf-8")
            frames = len(self._rows)
            self._phase = "idle"
            self._participant = None
            self._rows = []
            return {"ok": True, "csv_path": str(path), "frames": frames}

    def start_trial(self, gesture: str | Gesture, region: str | Region) -> dict:
        with self._lock:
            if self._phase != "session_open":
                raise StateError(f"cannot start trial in phase {self._phase}")
            g = gesture_from_token(gesture) if isinstance(gesture, str) else gesture
            r = region_from_token(region) if isinstance(region, str) else region
            if g is Gesture.NONE:
                raise ValueError("trial gesture cannot be 'none'")
            self._trial = TrialLabel(g, r, self._participant or "")
            self._trial_frames = []
            self._phase = "trial_running"
            event = {"type": "trial", "action": "start", "gesture": g.token, "region": r.token}
        self._broadcast(event)
        return {"ok": True, "gesture": g.token, "region": r.token}

    def stop_trial(self) -> dict:
        with self._lock:
            if self._phase != "trial_running":
                raise StateError("no active trial")
            trial = self._trial
            frames = list(self._trial_frames)
            detected = trial_detected(frames, trial, self._config) if frames else False
            peak = trial_peak_delta(frames, trial) if frames else 0
            self._phase = "session_open"
            self._trial = None
            self._trial_frames = []
            event = {
                "type": "trial",
                "action": "stop",
                "gesture": trial.gesture.token,
                "region": trial.region.token,
                "detected": detected,
                "peak_delta": peak,
                "frames": len(frames),
            }
        self._broadcast(event)
        return {"detected": detected, "peak_delta": peak, "frames": len(frames)}

    def set_thresholds(self, thresholds: Iterable[int]) -> dict:
        values = tuple(thresholds)
        with self._lock:
            # DetectionConfig validates; config unchanged on error
            self._config = DetectionConfig(values, self._config.debounce_on, self._config.debounce_off)
            return {"ok": True, "thresholds": list(self._config.thresholds)}

    # -- ingest --------------------------------------------------------------

    def ingest_frame(self, frame: SensorFrame) -> None:
        """Advance the pipeline one frame: detect, record, broadcast."""
        with self._lock:
            self._latest = frame
            self._touch = frozenset(frame_touch_set(frame, self._config))
            self._local = localize(frame, self._config)
            if self._last_t_ms is not None and frame.t_ms > self._last_t_ms:
                interval = frame.t_ms - self._last_t_ms
                if self._ema_interval is None:
                    self._ema_interval = float(interval)
                else:
                    self._ema_interval += RATE_EMA_ALPHA * (interval - self._ema_interval)
                self._rate_hz = 1000.0 / self._ema_interval
            self._last_t_ms = frame.t_ms
            self._frames += 1
            if self._phase == "trial_running":
                label = self._trial
                self._trial_frames.append(frame)
            elif self._phase == "session_open":
                label = TrialLabel.idle(self._participant or "")
            else:
                label = None
            if label is not None:
                self._rows.append((frame, label))
            frame_event = {
                "type": "frame",
                "seq": frame.seq,
                "t_ms": frame.t_ms,
                "deltas": list(frame.deltas()),
                "touch_set": sorted(self._touch),
                "localization": self._local.token if self._local else None,
                "rate_hz": self._rate_hz,
                "phase": self._phase,
            }
            touch_event = None
            if self._touch and self._last_touch_empty:
                touch_event = {
                    "type": "touch",
                    "t_ms": frame.t_ms,
                    "touch_set": sorted(self._touch),
                    "localization": self._local.token if self._local else None,
                }
            self._last_touch_empty = not self._touch
        self._broadcast(frame_event)
        if touch_event:
            self._broadcast(touch_event)

    def ingest_bytes(self, decoder: FrameDecoder, chunk: bytes) -> None:
        for frame in decoder.feed(chunk):
            self.diagnostics = decoder.diagnostics
            self.ingest_frame(frame)

    # -- observation ---------------------------------------------------------

    def snapshot(self) -> Snapshot:
        with self._lock:
            return Snapshot(
                phase=self._phase,
                participant=self._participant,
                trial=self._trial,
                config=self._config,
                frame=self._latest,
                touch_set=self._touch,
                localization=self._local,
                diagnostics=self.diagnostics.copy(),
                rate_hz=self._rate_hz,
                frames_ingested=self._frames,
            )

    # -- broadcast -----------------------------------------------------------

    def attach_loop(self, loop: asyncio.AbstractEventLoop) -> None:
        self._loop = loop

    def subscribe(self, maxsize: int = 256) -> asyncio.Queue:
        q: asyncio.Queue = asyncio.Queue(maxsize=maxsize)
        with self._lock:
            self._subscribers.append(q)
        return q

    def unsubscribe(self, q: asyncio.Queue) -> None:
        with self._lock:
            if q in self._subscribers:
                self._subscribers.remove(q)

    def _broadcast(self, event: dict) -> None:
        with self._lock:
            subscribers = list(self._subscribers)
            loop = self._loop
        for q in subscribers:
            if loop is not None and loop.is_running():
                loop.call_soon_threadsafe(_offer, q, event)
            else:
                _offer(q, event)


def _offer(q: asyncio.Queue, event: dict) -> None:
    # slow subscribers lose broadcast frames, never recorded ones
    try:
        q.put_nowait(event)
    except asyncio.QueueFull:
        pass


# -- frame sources -------------------------------------------------------------


async def sim_source(session: LiveSession, plan, params, realtime: bool = True) -> None:
    """Loop the plan's gesture waveforms forever (labels come from the live
    trial state, not the plan)."""
    from .sim import IDLE_GAP_FRAMES, DeviceSimulator

    sim = DeviceSimulator(params)
    period = params.frame_period_ms / 1000.0
    while True:
        for _label, script in plan:
            for frame in sim.idle(IDLE_GAP_FRAMES):
                session.ingest_frame(frame)
                if realtime:
                    await asyncio.sleep(period)
            for frame in sim.gesture(script):
                session.ingest_frame(frame)
                if realtime:
                    await asyncio.sleep(period)


async def serial_source(session: LiveSession, path: str, chunk_size: int = 256) -> None:
    """Read raw bytes from a serial device / pipe and decode incrementally."""
    decoder = FrameDecoder()
    loop = asyncio.get_running_loop()
    with open(path, "rb", buffering=0) as port:
        while True:
            chunk = await loop.run_in_executor(None, port.read, chunk_size)
            if not chunk:
                await asyncio.sleep(0.01)
                continue
            session.ingest_bytes(decoder, chunk)


# -- HTTP app --------------------------------------------------------------------


from pydantic import BaseModel


class SessionBody(BaseModel):
    participant: str


class TrialBody(BaseModel):
    gesture: str
    region: str


class ThresholdsBody(BaseModel):
    thresholds: list[int]


def create_app(session: LiveSession, source_coro=None, frontend_dir: str | None = None):
    from fastapi import FastAPI, HTTPException
    from fastapi.responses import StreamingResponse

    from contextlib import asynccontextmanager

    @asynccontextmanager
    async def lifespan(app):
        session.attach_loop(asyncio.get_running_loop())
        task = asyncio.create_task(source_coro) if source_coro is not None else None
        yield
        if task is not None:
            task.cancel()

    app = FastAPI(title="tactile-skin live service", lifespan=lifespan)

    def run(fn, *args):
        try:
            return fn(*args)
        except StateError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    @app.post("/session")
    def start_session(body: SessionBody):
        return run(session.start_session, body.participant)

    @app.delete("/session")
    def stop_session():
        return run(session.stop_session)

    @app.post("/trial")
    def start_trial(body: TrialBody):
        return run(session.start_trial, body.gesture, body.region)

    @app.delete("/trial")
    def stop_trial():
        return run(session.stop_trial)

    @app.put("/config/thresholds")
    def set_thresholds(body: ThresholdsBody):
        return run(session.set_thresholds, body.thresholds)

    @app.get("/state")
    def state():
        return session.snapshot().to_json()

    @app.get("/events")
    async def events() -> StreamingResponse:
        q = session.subscribe()

        async def stream() -> AsyncIterator[bytes]:
            try:
                while True:
                    event = await q.get()
                    yield f"data: {json.dumps(event)}\n\n".encode()
            finally:
                session.unsubscribe(q)

        return StreamingResponse(stream(), media_type="text/event-stream")

    if frontend_dir and Path(frontend_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=frontend_dir, html=True), name="ui")

    return app
