export const REGION_TOKENS = [
  "top_head",
  "left_cheek",
  "right_cheek",
  "left_head",
  "right_head",
  "left_trunk",
  "right_trunk",
  "front_trunk",
  "back_trunk",
] as const;

export type RegionToken = (typeof REGION_TOKENS)[number];

export const GESTURE_TOKENS = ["contact", "stroke", "pat", "scratch", "poke"] as const;
export type GestureToken = (typeof GESTURE_TOKENS)[number];

export const NUM_SENSORS = 9;

export interface ServerState {
  phase: "idle" | "session_open" | "trial_running";
  participant: string | null;
  trial: { gesture: string; region: string } | null;
  thresholds: number[];
  frame: {
    seq: number;
    t_ms: number;
    filtered: number[];
    baseline: number[];
    deltas: number[];
  } | null;
  touch_set: number[];
  localization: string | null;
  diagnostics: { bytes_skipped: number; crc_failures: number; range_failures: number };
  rate_hz: number | null;
  frames_ingested: number;
}

export interface FrameEvent {
  type: "frame";
  seq: number;
  t_ms: number;
  deltas: number[];
  touch_set: number[];
  localization: string | null;
  rate_hz: number | null;
  phase: string;
}

export interface TouchEvent_ {
  type: "touch";
  t_ms: number;
  touch_set: number[];
  localization: string | null;
}

export interface TrialEvent {
  type: "trial";
  action: "start" | "stop";
  gesture: string;
  region: string;
  detected?: boolean;
  peak_delta?: number;
  frames?: number;
}

export type ServerEvent = FrameEvent | TouchEvent_ | TrialEvent;

export interface TrialVerdict {
  gesture: string;
  region: string;
  detected: boolean;
  peak_delta: number;
}
