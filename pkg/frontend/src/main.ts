// Operator console wiring: event stream + controls. On (re)connect the view
// is rebuilt from GET /state, then kept current by /events.

import { ApiError, CommandGate, ServiceClient } from "./api.js";
import {
  renderLiveView,
  renderStatus,
  renderSummary,
  renderTrialBanner,
  regionTiles,
  showError,
} from "./render.js";
import { applyEvent, hydrate, initialState, isStale } from "./state.js";
import { GESTURE_TOKENS, REGION_TOKENS, type ServerEvent } from "./types.js";

const client = new ServiceClient("");
const gate = new CommandGate();
const state = initialState();

const $ = (id: string) => document.getElementById(id) as HTMLElement;

const tiles = regionTiles($("schematic"));
const statusEls = {
  phase: $("phase"),
  rate: $("rate"),
  diagnostics: $("diagnostics"),
  stale: $("stale"),
};

function redraw(): void {
  renderLiveView(state, tiles);
  renderStatus(state, isStale(state, Date.now()), statusEls);
  renderTrialBanner(state, $("trial-banner"));
  renderSummary(state, $("summary-body"));
}

async function reconnect(): Promise<void> {
  try {
    hydrate(state, await client.getState());
    state.lastEventAt = Date.now();
    redraw();
  } catch (err) {
    showError($("error"), `cannot reach service: ${err}`);
  }
  const source = new EventSource("/events");
  source.onmessage = (msg) => {
    const event = JSON.parse(msg.data) as ServerEvent;
    applyEvent(state, event, Date.now());
    redraw();
  };
  source.onerror = () => {
    source.close();
    window.setTimeout(reconnect, 1000);
  };
}

function command(category: "session" | "trial" | "config", fn: () => Promise<unknown>): void {
  if (gate.busy(category)) return;
  gate
    .run(category, fn)
    .then(redraw)
    .catch((err) => {
      const message = err instanceof ApiError ? err.message : String(err);
      showError($("error"), message);
      redraw();
    });
}

function setupControls(): void {
  const gestureSelect = $("gesture") as HTMLSelectElement;
  for (const g of GESTURE_TOKENS) gestureSelect.add(new Option(g, g));
  const regionSelect = $("region") as HTMLSelectElement;
  for (const r of REGION_TOKENS) regionSelect.add(new Option(r, r));

  $("start-session").onclick = () =>
    command("session", async () => {
      const participant = ($("participant") as HTMLInputElement).value || "anon";
      await client.startSession(participant);
      state.phase = "session_open";
      state.participant = participant;
      state.verdicts = [];
    });

  $("stop-session").onclick = () =>
    command("session", async () => {
      const result = await client.stopSession();
      state.phase = "idle";
      state.participant = null;
      showError($("error"), `session saved: ${result.csv_path} (${result.frames} frames)`);
    });

  $("start-trial").onclick = () =>
    command("trial", () => client.startTrial(gestureSelect.value, regionSelect.value));

  $("stop-trial").onclick = () =>
    command("trial", async () => {
      const verdict = await client.stopTrial();
      $("last-verdict").textContent = verdict.detected
        ? `DETECTED (peak ${verdict.peak_delta})`
        : `not detected (peak ${verdict.peak_delta})`;
    });

  const sliders: HTMLInputElement[] = [];
  const sliderBox = $("thresholds");
  REGION_TOKENS.forEach((token, i) => {
    const label = document.createElement("label");
    label.innerHTML = `<span>${token}</span>`;
    const slider = document.createElement("input");
    slider.type = "range";
    slider.min = "1";
    slider.max = "1023";
    slider.value = String(state.thresholds[i] ?? 10);
    const readout = document.createElement("b");
    readout.textContent = slider.value;
    slider.oninput = () => (readout.textContent = slider.value);
    slider.onchange = () => applyThresholds();
    label.appendChild(slider);
    label.appendChild(readout);
    sliderBox.appendChild(label);
    sliders.push(slider);
  });

  function applyThresholds(): void {
    const values = sliders.map((s) => Number(s.value));
    command("config", async () => {
      try {
        const ack = await client.setThresholds(values);
        state.thresholds = ack.thresholds;
        $("threshold-badge").textContent = new Set(ack.thresholds).size === 1
          ? `T=${ack.thresholds[0]} (global)`
          : "per-sensor thresholds";
      } catch (err) {
        // rejected: revert sliders to the last acknowledged config
        sliders.forEach((s, i) => {
          s.value = String(state.thresholds[i] ?? 10);
          (s.nextSibling as HTMLElement).textContent = s.value;
        });
        throw err;
      }
    });
  }
}

setupControls();
window.setInterval(() => renderStatus(state, isStale(state, Date.now()), statusEls), 500);
reconnect();
