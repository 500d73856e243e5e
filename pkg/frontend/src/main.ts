// Browser wiring. All logic lives in the pure modules (session, render,
// observatory); this file only moves events in and HTML out.

import { ApiFailure, Client } from "./api.js";
import { EstimatorSession } from "./session.js";
import type { OverrideField } from "./session.js";
import { renderComparison, renderDiagnostics, renderEstimate, renderScenarioEditor } from "./render.js";
import { DEFAULT_SORT, nextSort, renderObservatory } from "./observatory.js";
import type { SortKey, SortState } from "./observatory.js";
import type { ObservatoryRowPayload } from "./types.js";

const client = new Client();
const session = new EstimatorSession();

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (node === null) {
    throw new Error(`missing element #${id}`);
  }
  return node;
}

function renderSession(): void {
  const scenario = session.scenario;
  el("editor").innerHTML = scenario === null ? "" : renderScenarioEditor(scenario);
  const result = session.result;
  el("result").innerHTML = result === null ? "" : renderEstimate(result);
  el("comparison").innerHTML = renderComparison(session.history);
  if (scenario !== null) {
    bindEditor();
  }
}

function showError(failure: unknown): void {
  if (failure instanceof ApiFailure) {
    const diagnostics = failure.body.error.details?.diagnostics;
    if (diagnostics !== undefined) {
      el("result").innerHTML = renderDiagnostics(diagnostics);
      return;
    }
    el("result").textContent = failure.body.error.message;
    return;
  }
  el("result").textContent = String(failure);
}

async function triggerEstimate(): Promise<void> {
  const body = session.requestBody();
  if (body === null) {
    return;
  }
  const revision = session.beginEstimate();
  try {
    const result = await client.estimate(body);
    if (session.applyResult(revision, result)) {
      renderSession();
    }
  } catch (failure) {
    showError(failure);
  }
}

async function parseDescription(): Promise<void> {
  const text = (el("description") as HTMLTextAreaElement).value;
  const revision = session.setDescription(text);
  try {
    const parsed = await client.parse(text);
    if (session.applyParse(revision, parsed.scenario)) {
      renderSession();
      await triggerEstimate();
    }
  } catch (failure) {
    showError(failure);
  }
}

// "750 in / 250 out", "750/250", or "750 250".
function parseTokenPair(value: string): { input: number; output: number } | null {
  const numbers = value.match(/\d+/g);
  if (numbers === null || numbers.length !== 2) {
    return null;
  }
  return { input: Number(numbers[0]), output: Number(numbers[1]) };
}

function applyFieldEdit(field: string, value: string): boolean {
  const trimmed = value.trim();
  switch (field) {
    case "model":
    case "request_type":
    case "country": {
      const key = field as OverrideField;
      session.setOverride(key, trimmed === "" || trimmed === "provider default" ? undefined : trimmed);
      return true;
    }
    case "requests_per_month": {
      const parsed = Number(trimmed);
      session.setOverride(
        "requests_per_month",
        trimmed === "" || trimmed === "not set" || !Number.isFinite(parsed) ? undefined : parsed,
      );
      return true;
    }
    case "token_load": {
      const pair = parseTokenPair(trimmed);
      session.setOverride("input_tokens", pair === null ? undefined : pair.input);
      session.setOverride("output_tokens", pair === null ? undefined : pair.output);
      return true;
    }
    default:
      return false;
  }
}

function bindEditor(): void {
  for (const input of el("editor").querySelectorAll<HTMLInputElement>("input[name]")) {
    input.addEventListener("change", () => {
      if (applyFieldEdit(input.name, input.value)) {
        void triggerEstimate();
      }
    });
  }
}

// ── Observatory tab ─────────────────────────────────────────────────────

let observatoryRows: ObservatoryRowPayload[] = [];
let sortState: SortState = DEFAULT_SORT;

function renderObservatoryPane(): void {
  const table = el("observatory");
  table.innerHTML = renderObservatory(observatoryRows, sortState);
  for (const button of table.querySelectorAll<HTMLButtonElement>("button.sort")) {
    button.addEventListener("click", () => {
      sortState = nextSort(sortState, button.dataset["sort"] as SortKey);
      renderObservatoryPane();
    });
  }
}

async function loadObservatory(): Promise<void> {
  const response = await client.observatory();
  observatoryRows = response.rows;
  el("observatory-disclaimer").textContent = response.disclaimer;
  renderObservatoryPane();
}

async function downloadCsv(): Promise<void> {
  const bytes = await client.observatoryCsv();
  const blob = new Blob([bytes.buffer as ArrayBuffer], { type: "text/csv;charset=utf-8" });
  const link = document.createElement("a");
  link.href = URL.createObjectURL(blob);
  link.download = "observatory.csv";
  link.click();
  URL.revokeObjectURL(link.href);
}

function main(): void {
  el("parse").addEventListener("click", () => void parseDescription());
  el("pin").addEventListener("click", () => {
    if (session.pin()) {
      renderSession();
    }
  });
  el("download-csv").addEventListener("click", () => void downloadCsv());
  void loadObservatory();
}

main();
