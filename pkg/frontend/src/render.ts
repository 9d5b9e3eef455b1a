// DOM rendering: a flat 9-region schematic with delta bars, trial banner,
// verdict table, and diagnostics. Pure view of UiState; no detection logic.

import { summaryTable, type UiState } from "./state.js";
import { REGION_TOKENS } from "./types.js";

const BAR_FULL_SCALE = 100; // counts mapped to 100% bar height

export function regionTiles(root: HTMLElement): Map<string, HTMLElement> {
  const tiles = new Map<string, HTMLElement>();
  // stylized head-above-trunk layout
  const placement: Record<string, string> = {
    top_head: "tile-top-head",
    left_cheek: "tile-left-cheek",
    right_cheek: "tile-right-cheek",
    left_head: "tile-left-head",
    right_head: "tile-right-head",
    left_trunk: "tile-left-trunk",
    right_trunk: "tile-right-trunk",
    front_trunk: "tile-front-trunk",
    back_trunk: "tile-back-trunk",
  };
  for (const token of REGION_TOKENS) {
    const tile = document.createElement("div");
    tile.className = `region-tile ${placement[token]}`;
    tile.dataset.region = token;
    tile.innerHTML = `
      <div class="region-name">${token.replace("_", " ")}</div>
      <div class="bar-track"><div class="bar-fill"></div></div>
      <div class="delta-value">0</div>`;
    root.appendChild(tile);
    tiles.set(token, tile);
  }
  return tiles;
}

export function renderLiveView(state: UiState, tiles: Map<string, HTMLElement>): void {
  REGION_TOKENS.forEach((token, sensor) => {
    const tile = tiles.get(token);
    if (!tile) return;
    const delta = state.deltas[sensor] ?? 0;
    const fill = tile.querySelector<HTMLElement>(".bar-fill");
    if (fill) fill.style.height = `${Math.min(100, (100 * delta) / BAR_FULL_SCALE)}%`;
    const value = tile.querySelector<HTMLElement>(".delta-value");
    if (value) value.textContent = String(delta);
    tile.classList.toggle("touched", state.touchSet.has(sensor));
    tile.classList.toggle("localized", state.localization === token);
  });
}

export function renderStatus(state: UiState, stale: boolean, el: {
  phase: HTMLElement;
  rate: HTMLElement;
  diagnostics: HTMLElement;
  stale: HTMLElement;
}): void {
  const who = state.participant ? ` (${state.participant})` : "";
  el.phase.textContent = state.phase + who;
  el.rate.textContent = state.rateHz === null ? "- Hz" : `${state.rateHz.toFixed(2)} Hz`;
  const d = state.diagnostics;
  el.diagnostics.textContent =
    `skipped ${d.bytes_skipped}B / crc ${d.crc_failures} / range ${d.range_failures}`;
  el.stale.classList.toggle("visible", stale);
}

export function renderTrialBanner(state: UiState, banner: HTMLElement): void {
  if (state.trial) {
    banner.textContent = `TRIAL RUNNING: ${state.trial.gesture} on ${state.trial.region}`;
    banner.classList.add("active");
  } else {
    banner.textContent = "no active trial";
    banner.classList.remove("active");
  }
}

export function renderSummary(state: UiState, tbody: HTMLElement): void {
  tbody.innerHTML = "";
  const table = summaryTable(state.verdicts);
  for (const [key, cell] of table) {
    const [gesture, region] = key.split("/");
    const row = document.createElement("tr");
    const percent = Math.round((100 * cell.detected) / cell.trials);
    row.innerHTML =
      `<td>${gesture}</td><td>${region}</td>` +
      `<td>${cell.detected}/${cell.trials}</td><td>${percent}%</td>`;
    tbody.appendChild(row);
  }
}

export function showError(el: HTMLElement, message: string): void {
  el.textContent = message;
  el.classList.add("visible");
  window.setTimeout(() => el.classList.remove("visible"), 4000);
}
