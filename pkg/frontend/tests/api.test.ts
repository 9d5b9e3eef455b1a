import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiError, CommandGate, ServiceClient } from "../src/api.js";

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("CommandGate", () => {
  it("allows one command per category at a time", async () => {
    const gate = new CommandGate();
    let release!: () => void;
    const pending = gate.run("trial", () => new Promise<void>((r) => (release = r)));
    expect(gate.busy("trial")).toBe(true);
    await expect(gate.run("trial", async () => {})).rejects.toBeInstanceOf(ApiError);
    release();
    await pending;
    expect(gate.busy("trial")).toBe(false);
  });

  it("categories are independent", async () => {
    const gate = new CommandGate();
    let release!: () => void;
    const pending = gate.run("session", () => new Promise<void>((r) => (release = r)));
    await expect(gate.run("config", async () => "ok")).resolves.toBe("ok");
    release();
    await pending;
  });

  it("releases the category when the command throws", async () => {
    const gate = new CommandGate();
    await expect(
      gate.run("config", async () => {
        throw new ApiError(422, "bad thresholds");
      }),
    ).rejects.toMatchObject({ status: 422 });
    expect(gate.busy("config")).toBe(false);
  });
});

describe("ServiceClient", () => {
  it("sends JSON bodies and returns parsed payloads", async () => {
    const fetchMock = vi.fn().mockResolvedValue(jsonResponse(200, { ok: true, participant: "p01" }));
    vi.stubGlobal("fetch", fetchMock);
    const client = new ServiceClient("http://host");
    const result = await client.startSession("p01");
    expect(result).toEqual({ ok: true, participant: "p01" });
    expect(fetchMock).toHaveBeenCalledWith("http://host/session", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ participant: "p01" }),
    });
  });

  it("raises ApiError with the server's detail on non-2xx", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn().mockResolvedValue(jsonResponse(409, { detail: "no session is open" })),
    );
    const client = new ServiceClient("");
    const error = await client.stopSession().catch((e) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect(error.status).toBe(409);
    expect(error.message).toBe("no session is open");
  });

  it("falls back to the status text when the error body is not JSON", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn().mockResolvedValue(new Response("boom", { status: 500, statusText: "Internal Server Error" })),
    );
    const client = new ServiceClient("");
    const error = await client.getState().catch((e) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect(error.message).toBe("Internal Server Error");
  });
});
