// Observatory table: client-side column sorting over the rows exactly as
// served, and rendering with the API's display strings (small training
// values keep their extra decimals because the strings are never
// reformatted). Default order is the API order.

import type { Band, ObservatoryRowPayload } from "./types.js";
import { escapeHtml } from "./render.js";

export type SortKey = "model" | "energy" | "carbon" | "training";

export interface SortState {
  key: SortKey | null; // null keeps the API order
  direction: "asc" | "desc";
}

export const DEFAULT_SORT: SortState = { key: null, direction: "desc" };

function sortBand(row: ObservatoryRowPayload, key: SortKey): Band | null {
  switch (key) {
    case "energy":
      return row.energy;
    case "carbon":
      return row.carbon;
    case "training":
      return row.training_energy;
    case "model":
      return null;
  }
}

// Stable copy-sort. Rows without a value (failed rows) always sink to the
// bottom regardless of direction.
export function sortRows(
  rows: readonly ObservatoryRowPayload[],
  state: SortState,
): ObservatoryRowPayload[] {
  const copy = [...rows];
  if (state.key === null) {
    return copy;
  }
  const sign = state.direction === "asc" ? 1 : -1;
  const key = state.key;
  return copy.sort((a, b) => {
    if (key === "model") {
      return sign * a.model_id.localeCompare(b.model_id);
    }
    const bandA = sortBand(a, key);
    const bandB = sortBand(b, key);
    if (bandA === null || bandB === null) {
      return Number(bandA === null) - Number(bandB === null);
    }
    return sign * (bandA.central - bandB.central);
  });
}

export function nextSort(state: SortState, key: SortKey): SortState {
  if (state.key !== key) {
    return { key, direction: "desc" };
  }
  if (state.direction === "desc") {
    return { key, direction: "asc" };
  }
  return { key: null, direction: "desc" }; // third click restores API order
}

function bandCell(band: Band | null): string {
  if (band === null) {
    return `<td class="empty">-</td>`;
  }
  return `<td title="low ${band.display.low} / high ${band.display.high} ${escapeHtml(
    band.unit,
  )}">${band.display.central}<span class="range"> [${band.display.low}, ${
    band.display.high
  }]</span></td>`;
}

const HEADERS: { key: SortKey | null; label: string }[] = [
  { key: "model", label: "Model" },
  { key: "energy", label: "Inference Wh/request" },
  { key: "carbon", label: "Carbon g/request" },
  { key: "training", label: "Training GWh" },
  { key: null, label: "Grid" },
  { key: null, label: "Flags" },
];

export function renderObservatory(
  rows: readonly ObservatoryRowPayload[],
  state: SortState,
): string {
  const header = HEADERS.map((h) => {
    if (h.key === null) {
      return `<th>${escapeHtml(h.label)}</th>`;
    }
    const indicator =
      state.key === h.key ? (state.direction === "desc" ? " ▼" : " ▲") : "";
    return `<th><button type="button" class="sort" data-sort="${h.key}">${escapeHtml(
      h.label,
    )}${indicator}</button></th>`;
  }).join("");
  const body = sortRows(rows, state)
    .map((row) => {
      const flags = [
        row.params_assumed ? "size assumed" : "",
        row.factors_fitted ? "fitted" : "",
      ]
        .filter((f) => f !== "")
        .join(", ");
      const error =
        row.error === null ? "" : `<span class="row-error">${escapeHtml(row.error)}</span>`;
      return `
  <tr data-model="${escapeHtml(row.model_id)}">
    <td>${escapeHtml(row.display_name)}${error}</td>
    ${bandCell(row.energy)}
    ${bandCell(row.carbon)}
    ${bandCell(row.training_energy)}
    <td>${escapeHtml(row.country_code)}</td>
    <td>${escapeHtml(flags)}</td>
  </tr>`;
    })
    .join("");
  return `<table class="observatory"><thead><tr>${header}</tr></thead><tbody>${body}\n</tbody></table>`;
}
