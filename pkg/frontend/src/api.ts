// Thin client for the live service. Commands are fire-and-acknowledge:
// the display always reflects the server's response payload, and at most
// one command per category may be in flight.

import type { ServerState } from "./types.js";

export class ApiError extends Error {
  constructor(readonly status: number, detail: string) {
    super(detail);
  }
}

async function request(base: string, method: string, path: string, body?: unknown): Promise<any> {
  const response = await fetch(base + path, {
    method,
    headers: body !== undefined ? { "Content-Type": "application/json" } : undefined,
    body: body !== undefined ? JSON.stringify(body) : undefined,
  });
  const payload = await response.json().catch(() => ({}));
  if (!response.ok) {
    const detail = typeof payload.detail === "string" ? payload.detail : response.statusText;
    throw new ApiError(response.status, detail);
  }
  return payload;
}

export class ServiceClient {
  constructor(readonly base: string = "") {}

  getState(): Promise<ServerState> {
    return request(this.base, "GET", "/state");
  }

  startSession(participant: string): Promise<{ ok: boolean; participant: string }> {
    return request(this.base, "POST", "/session", { participant });
  }

  stopSession(): Promise<{ ok: boolean; csv_path: string; frames: number }> {
    return request(this.base, "DELETE", "/session");
  }

  startTrial(gesture: string, region: string): Promise<{ ok: boolean }> {
    return request(this.base, "POST", "/trial", { gesture, region });
  }

  stopTrial(): Promise<{ detected: boolean; peak_delta: number; frames: number }> {
    return request(this.base, "DELETE", "/trial");
  }

  setThresholds(thresholds: number[]): Promise<{ ok: boolean; thresholds: number[] }> {
    return request(this.base, "PUT", "/config/thresholds", { thresholds });
  }
}

export type CommandCategory = "session" | "trial" | "config";

/** Allows at most one in-flight command per category. */
export class CommandGate {
  private inflight = new Set<CommandCategory>();

  busy(category: CommandCategory): boolean {
    return this.inflight.has(category);
  }

  async run<T>(category: CommandCategory, command: () => Promise<T>): Promise<T> {
    if (this.inflight.has(category)) {
      throw new ApiError(0, `a ${category} command is already in flight`);
    }
    this.inflight.add(category);
    try {
      return await command();
    } finally {
      this.inflight.delete(category);
    }
  }
}
