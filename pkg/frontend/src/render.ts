// View models and HTML rendering, kept pure (string in, string out) so the
// contract tests can run without a DOM. The hard rule: every number shown
// to the user is copied verbatim from an API response field (band
// `display` strings, or String() of an integer quantity). Nothing is
// computed or reformatted here.

import type {
  Assumption,
  Band,
  Diagnostic,
  EstimateResponse,
  FieldProvenance,
  ScenarioField,
  ScenarioPayload,
} from "./types.js";
import { SCENARIO_FIELDS } from "./types.js";
import type { PinnedComparison } from "./session.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

// ── Scenario editor ─────────────────────────────────────────────────────

export interface BadgedField {
  field: ScenarioField;
  label: string;
  value: string;
  badge: FieldProvenance;
}

const FIELD_LABELS: Record<ScenarioField, string> = {
  model: "Model",
  request_type: "Request type",
  token_load: "Tokens per request",
  requests_per_month: "Requests per month",
  country: "Country",
};

export function scenarioFields(scenario: ScenarioPayload): BadgedField[] {
  const values: Record<ScenarioField, string> = {
    model: scenario.model_id,
    request_type: scenario.request_type,
    token_load: `${String(scenario.token_load.input_tokens.value)} in / ${String(
      scenario.token_load.output_tokens.value,
    )} out`,
    requests_per_month:
      scenario.requests_per_month === null
        ? "not set"
        : String(scenario.requests_per_month.value),
    country: scenario.country_code === null ? "provider default" : scenario.country_code,
  };
  return SCENARIO_FIELDS.map((field) => ({
    field,
    label: FIELD_LABELS[field],
    value: values[field],
    badge: scenario.field_provenance[field],
  }));
}

function badgeHtml(badge: string): string {
  return `<span class="badge badge-${escapeHtml(badge)}">${escapeHtml(badge)}</span>`;
}

export function renderScenarioEditor(scenario: ScenarioPayload): string {
  const rows = scenarioFields(scenario)
    .map(
      (f) => `
  <div class="field" data-field="${f.field}">
    <label>${escapeHtml(f.label)}</label>
    <input name="${f.field}" value="${escapeHtml(f.value)}" />
    ${badgeHtml(f.badge)}
  </div>`,
    )
    .join("");
  return `<form class="scenario-editor">${rows}\n</form>`;
}

export function renderDiagnostics(diagnostics: Diagnostic[]): string {
  const items = diagnostics
    .map((d) => {
      const suggestions = d.suggestions
        .map((s) => `<button type="button" class="suggestion">${escapeHtml(s)}</button>`)
        .join(" ");
      return `
  <li class="diagnostic" data-code="${escapeHtml(d.code)}">
    <span class="message">${escapeHtml(d.message)}</span>
    <span class="suggestions">${suggestions}</span>
  </li>`;
    })
    .join("");
  return `<ul class="diagnostics">${items}\n</ul>`;
}

// ── Estimate view ───────────────────────────────────────────────────────

export interface BandView {
  unit: string;
  low: string;
  central: string;
  high: string;
}

export function bandView(band: Band): BandView {
  return {
    unit: band.display.unit ?? band.unit,
    low: band.display.low,
    central: band.display.central,
    high: band.display.high,
  };
}

export interface EstimateView {
  disclaimer: string;
  methodologyVersion: string;
  modelName: string;
  modelId: string;
  fields: BadgedField[];
  energy: BandView;
  carbon: BandView;
  weightedVolume: string;
  gridCountry: string;
  annualized: {
    requestsPerYear: string;
    energy: BandView;
    carbon: BandView;
  } | null;
  ledger: Assumption[];
}

export function estimateView(response: EstimateResponse): EstimateView {
  const e = response.estimate;
  return {
    disclaimer: response.disclaimer,
    methodologyVersion: response.methodology_version,
    modelName: response.model.display_name,
    modelId: response.model.id,
    fields: scenarioFields(response.scenario),
    energy: bandView(e.energy),
    carbon: bandView(e.carbon),
    weightedVolume: `${String(e.weighted_volume.value)} ${e.weighted_volume.unit}`,
    gridCountry: e.country_code,
    annualized:
      response.annualized === null
        ? null
        : {
            requestsPerYear: `${String(response.annualized.requests_per_year.value)} ${
              response.annualized.requests_per_year.unit
            }`,
            energy: bandView(response.annualized.energy),
            carbon: bandView(response.annualized.carbon),
          },
    ledger: e.assumptions,
  };
}

// Textual band bar: three markers, values straight from the display strings.
function bandBarHtml(label: string, band: BandView): string {
  return `
  <div class="band" data-band="${escapeHtml(label)}">
    <span class="band-label">${escapeHtml(label)}</span>
    <span class="band-bar">
      <span class="marker marker-low" title="low">${band.low}</span>
      <span class="marker marker-central" title="central">${band.central}</span>
      <span class="marker marker-high" title="high">${band.high}</span>
    </span>
    <span class="band-unit">[${escapeHtml(band.unit)}]</span>
  </div>`;
}

function ledgerHtml(ledger: Assumption[]): string {
  const items = ledger
    .map(
      (a) => `
    <li><code>${escapeHtml(a.name)}</code> = ${escapeHtml(a.value)} ${badgeHtml(
      a.provenance,
    )}${a.note === "" ? "" : ` <span class="note">${escapeHtml(a.note)}</span>`}</li>`,
    )
    .join("");
  return `<ul class="ledger">${items}\n  </ul>`;
}

export function renderEstimate(response: EstimateResponse): string {
  const view = estimateView(response);
  const annualized =
    view.annualized === null
      ? `<p class="no-annual">Add a request volume to see annual totals.</p>`
      : `
  <section class="annualized">
    <h3>Annualized (${escapeHtml(view.annualized.requestsPerYear)})</h3>
    ${bandBarHtml("energy", view.annualized.energy)}
    ${bandBarHtml("carbon", view.annualized.carbon)}
  </section>`;
  return `
<article class="estimate">
  <p class="disclaimer">${escapeHtml(view.disclaimer)}</p>
  <p class="meta">methodology ${escapeHtml(view.methodologyVersion)} ·
    <strong>${escapeHtml(view.modelName)}</strong> (${escapeHtml(view.modelId)}) ·
    grid ${escapeHtml(view.gridCountry)} ·
    ${escapeHtml(view.weightedVolume)}</p>
  <section class="per-request">
    <h3>Per request</h3>
    ${bandBarHtml("energy", view.energy)}
    ${bandBarHtml("carbon", view.carbon)}
  </section>
  ${annualized}
  <section class="assumptions">
    <h3>Assumptions</h3>
    ${ledgerHtml(view.ledger)}
  </section>
</article>`;
}

// ── Pinned what-if comparison drawer ────────────────────────────────────

export function renderComparison(history: readonly PinnedComparison[]): string {
  if (history.length === 0) {
    return `<aside class="comparison empty">Pin an estimate to compare what-ifs.</aside>`;
  }
  const columns = history
    .map((pin, index) => {
      const view = estimateView(pin.result);
      const fields = view.fields
        .map((f) => `<div class="pin-field">${escapeHtml(f.label)}: ${escapeHtml(f.value)}</div>`)
        .join("");
      return `
  <div class="pinned" data-pin="${index}">
    <button type="button" class="unpin" data-pin="${index}">unpin</button>
    ${fields}
    ${bandBarHtml("energy", view.energy)}
    ${bandBarHtml("carbon", view.carbon)}
  </div>`;
    })
    .join("");
  return `<aside class="comparison">${columns}\n</aside>`;
}
