// Client-side estimator state. One invariant drives the design: the
// displayed result must always correspond to the displayed scenario.
// Every input mutation bumps a revision counter; estimate responses carry
// the revision they were launched for and are dropped on arrival if the
// scenario has moved on (last write wins per revision).

import type {
  EstimateRequestBody,
  EstimateResponse,
  FieldProvenance,
  ScenarioField,
  ScenarioPayload,
} from "./types.js";

export interface PinnedComparison {
  scenario: ScenarioPayload;
  result: EstimateResponse;
}

// The subset of estimate-request fields a user can override in the editor.
export type OverrideField =
  | "model"
  | "request_type"
  | "input_tokens"
  | "output_tokens"
  | "requests_per_month"
  | "country";

export type Overrides = Partial<Pick<EstimateRequestBody, OverrideField>>;

const OVERRIDES_BY_FIELD: Record<ScenarioField, OverrideField[]> = {
  model: ["model"],
  request_type: ["request_type"],
  token_load: ["input_tokens", "output_tokens"],
  requests_per_month: ["requests_per_month"],
  country: ["country"],
};

export class EstimatorSession {
  private revisionCounter = 0;
  private resultRevision = -1;
  private descriptionText = "";
  private parsedScenario: ScenarioPayload | null = null;
  private latestResult: EstimateResponse | null = null;
  private userOverrides: Overrides = {};
  private pinned: PinnedComparison[] = [];

  get revision(): number {
    return this.revisionCounter;
  }

  get description(): string {
    return this.descriptionText;
  }

  get overrides(): Readonly<Overrides> {
    return this.userOverrides;
  }

  get history(): readonly PinnedComparison[] {
    return this.pinned;
  }

  // The scenario the editor shows: values from the server-resolved result
  // when current (falling back to the parse), badges from what the user
  // actually did. A parser-inferred field stays "inferred" even though the
  // estimate request spells it out; an overridden field becomes "explicit".
  get scenario(): ScenarioPayload | null {
    const result = this.result;
    const base = result !== null ? result.scenario : this.parsedScenario;
    if (base === null) {
      return null;
    }
    const provenance = { ...(this.parsedScenario ?? base).field_provenance };
    for (const field of Object.keys(OVERRIDES_BY_FIELD) as ScenarioField[]) {
      if (OVERRIDES_BY_FIELD[field].some((key) => this.userOverrides[key] !== undefined)) {
        provenance[field] = "explicit" satisfies FieldProvenance;
      }
    }
    return { ...base, field_provenance: provenance };
  }

  // Null whenever the scenario has changed since the result arrived.
  get result(): EstimateResponse | null {
    return this.resultRevision === this.revisionCounter ? this.latestResult : null;
  }

  setDescription(text: string): number {
    this.descriptionText = text;
    this.parsedScenario = null;
    this.userOverrides = {};
    return ++this.revisionCounter;
  }

  applyParse(revision: number, scenario: ScenarioPayload): boolean {
    if (revision !== this.revisionCounter) {
      return false;
    }
    this.parsedScenario = scenario;
    return true;
  }

  // undefined clears an override back to whatever the parse implies.
  setOverride<K extends OverrideField>(field: K, value: Overrides[K] | undefined): number {
    if (value === undefined) {
      delete this.userOverrides[field];
    } else {
      this.userOverrides[field] = value;
    }
    return ++this.revisionCounter;
  }

  // Call when launching POST /v1/estimate; pass the token to applyResult.
  beginEstimate(): number {
    return this.revisionCounter;
  }

  applyResult(revision: number, result: EstimateResponse): boolean {
    if (revision !== this.revisionCounter) {
      return false;
    }
    this.latestResult = result;
    this.resultRevision = revision;
    return true;
  }

  // Body for POST /v1/estimate: the parsed scenario resolved to explicit
  // fields, with user overrides on top. Parser defaults are left out so the
  // server re-applies its own (they share one catalog table); parser
  //-extracted values are sent as is. Returns null until a model is known.
  requestBody(): EstimateRequestBody | null {
    const parsed = this.parsedScenario;
    const body: EstimateRequestBody = {};
    const model = this.userOverrides.model ?? parsed?.model_id;
    if (model === undefined) {
      return null;
    }
    body.model = model;
    if (parsed !== null) {
      body.request_type = parsed.request_type;
      if (parsed.field_provenance.token_load === "explicit") {
        body.input_tokens = parsed.token_load.input_tokens.value;
        body.output_tokens = parsed.token_load.output_tokens.value;
      }
      if (parsed.requests_per_month !== null) {
        body.requests_per_month = parsed.requests_per_month.value;
      }
      if (parsed.country_code !== null) {
        body.country = parsed.country_code;
      }
    }
    return { ...body, ...this.userOverrides };
  }

  pin(): boolean {
    const result = this.result;
    if (result === null) {
      return false;
    }
    this.pinned = [...this.pinned, { scenario: result.scenario, result }];
    return true;
  }

  unpin(index: number): void {
    this.pinned = this.pinned.filter((_, i) => i !== index);
  }
}
