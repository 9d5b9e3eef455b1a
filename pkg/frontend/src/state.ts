// Client-side mirror of the service state. The console never computes
// detection itself: touch sets, localization, and verdicts all come from
// the server, and reconnecting rebuilds everything from GET /state plus
// subsequent events.

import {
  NUM_SENSORS,
  type ServerEvent,
  type ServerState,
  type TrialVerdict,
} from "./types.js";

export const HISTORY_CAPACITY = 200;

/** Fixed-capacity ring of per-sensor delta rows (most recent last). */
export class DeltaRing {
  private rows: number[][] = [];
  constructor(readonly capacity: number = HISTORY_CAPACITY) {}

  push(deltas: number[]): void {
    this.rows.push(deltas.slice());
    if (this.rows.length > this.capacity) {
      this.rows.splice(0, this.rows.length - this.capacity);
    }
  }

  get length(): number {
    return this.rows.length;
  }

  /** Most recent `n` delta values for one sensor, oldest first. */
  series(sensor: number, n = this.capacity): number[] {
    return this.rows.slice(-n).map((row) => row[sensor] ?? 0);
  }

  clear(): void {
    this.rows = [];
  }
}

export interface UiState {
  phase: string;
  participant: string | null;
  trial: { gesture: string; region: string } | null;
  thresholds: number[];
  deltas: number[];
  touchSet: Set<number>;
  localization: string | null;
  rateHz: number | null;
  diagnostics: { bytes_skipped: number; crc_failures: number; range_failures: number };
  lastEventAt: number | null;
  verdicts: TrialVerdict[];
  history: DeltaRing;
}

export function initialState(): UiState {
  return {
    phase: "idle",
    participant: null,
    trial: null,
    thresholds: new Array(NUM_SENSORS).fill(10),
    deltas: new Array(NUM_SENSORS).fill(0),
    touchSet: new Set(),
    localization: null,
    rateHz: null,
    diagnostics: { bytes_skipped: 0, crc_failures: 0, range_failures: 0 },
    lastEventAt: null,
    verdicts: [],
    history: new DeltaRing(),
  };
}

/** Hydrate from GET /state (used at startup and after reconnect). */
export function hydrate(state: UiState, server: ServerState): UiState {
  state.phase = server.phase;
  state.participant = server.participant;
  state.trial = server.trial;
  state.thresholds = server.thresholds.slice();
  state.deltas = server.frame ? server.frame.deltas.slice() : new Array(NUM_SENSORS).fill(0);
  state.touchSet = new Set(server.touch_set);
  state.localization = server.localization;
  state.rateHz = server.rate_hz;
  state.diagnostics = { ...server.diagnostics };
  if (server.frame) state.history.push(server.frame.deltas);
  return state;
}

/** Apply one server-sent event; returns the same (mutated) state. */
export function applyEvent(state: UiState, event: ServerEvent, now: number): UiState {
  state.lastEventAt = now;
  switch (event.type) {
    case "frame":
      state.deltas = event.deltas.slice();
      state.touchSet = new Set(event.touch_set);
      state.localization = event.localization;
      state.rateHz = event.rate_hz;
      state.phase = event.phase;
      state.history.push(event.deltas);
      break;
    case "touch":
      state.touchSet = new Set(event.touch_set);
      state.localization = event.localization;
      break;
    case "trial":
      if (event.action === "start") {
        state.trial = { gesture: event.gesture, region: event.region };
        state.phase = "trial_running";
      } else {
        state.trial = null;
        state.phase = "session_open";
        state.verdicts.push({
          gesture: event.gesture,
          region: event.region,
          detected: event.detected ?? false,
          peak_delta: event.peak_delta ?? 0,
        });
      }
      break;
  }
  return state;
}

export function isStale(state: UiState, now: number, timeoutMs = 2000): boolean {
  return state.lastEventAt === null || now - state.lastEventAt > timeoutMs;
}

export interface SummaryCell {
  trials: number;
  detected: number;
}

/** Per (gesture, region) verdict counts, the shape of `evaluate` output. */
export function summaryTable(verdicts: TrialVerdict[]): Map<string, SummaryCell> {
  const table = new Map<string, SummaryCell>();
  for (const v of verdicts) {
    const key = `${v.gesture}/${v.region}`;
    const cell = table.get(key) ?? { trials: 0, detected: 0 };
    cell.trials += 1;
    if (v.detected) cell.detected += 1;
    table.set(key, cell);
  }
  return table;
}
