// Shapes of the /v1 JSON payloads, as served. The UI treats these as the
// source of truth for every displayed number: band `display` strings are
// shown verbatim, never reformatted client-side.

export interface Quantity {
  value: number;
  unit: string;
}

export interface TripleValues {
  low: number;
  central: number;
  high: number;
}

// low/central/high are the reordered bounds; scenario_values keeps which
// named scenario produced which number (they differ for sub-anchor models).
// Annual carbon display carries its own auto-scaled unit (g/kg/t); the
// band-level unit stays the raw one the numeric values are in.
export interface Band extends TripleValues {
  unit: string;
  scenario_values: TripleValues;
  display: { low: string; central: string; high: string; unit?: string };
}

export type FieldProvenance = "explicit" | "inferred" | "default";

export interface ScenarioPayload {
  model_id: string;
  request_type: string;
  token_load: { input_tokens: Quantity; output_tokens: Quantity };
  requests_per_month: Quantity | null;
  country_code: string | null;
  field_provenance: Record<ScenarioField, FieldProvenance>;
}

export type ScenarioField =
  | "model"
  | "request_type"
  | "token_load"
  | "requests_per_month"
  | "country";

export const SCENARIO_FIELDS: readonly ScenarioField[] = [
  "model",
  "request_type",
  "token_load",
  "requests_per_month",
  "country",
];

export interface Assumption {
  name: string;
  value: string;
  provenance: "user" | "catalog" | "default" | "derived";
  note: string;
}

export interface InferencePayload {
  energy: Band;
  carbon: Band;
  effective_params: { unit: string } & TripleValues;
  weighted_volume: Quantity;
  country_code: string;
  assumptions: Assumption[];
}

export interface AnnualizedPayload {
  requests_per_year: Quantity;
  energy: Band;
  carbon: Band;
}

export interface EstimateResponse {
  methodology_version: string;
  disclaimer: string;
  model: { id: string; display_name: string };
  scenario: ScenarioPayload;
  estimate: InferencePayload;
  annualized: AnnualizedPayload | null;
}

export interface ParseResponse {
  methodology_version: string;
  scenario: ScenarioPayload;
}

export interface Diagnostic {
  code: string;
  message: string;
  suggestions: string[];
}

export interface ApiErrorBody {
  error: {
    code: string;
    message: string;
    details?: { diagnostics?: Diagnostic[]; suggestions?: string[]; candidates?: string[] };
  };
}

export interface ObservatoryRowPayload {
  model_id: string;
  display_name: string;
  energy: Band | null;
  carbon: Band | null;
  training_energy: Band | null;
  country_code: string;
  params_assumed: boolean;
  factors_fitted: boolean;
  error: string | null;
}

export interface ObservatoryResponse {
  methodology_version: string;
  disclaimer: string;
  rows: ObservatoryRowPayload[];
}

// Body for POST /v1/estimate: explicit scenario fields only (free text goes
// to POST /v1/parse first). Undefined fields are omitted from the JSON.
export interface EstimateRequestBody {
  model?: string;
  request_type?: string;
  input_tokens?: number;
  output_tokens?: number;
  requests_per_month?: number;
  country?: string;
}
