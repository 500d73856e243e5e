// Fixture loading for the contract tests. The fixtures are recorded real
// API responses (scripts/record_ui_fixtures.py in the backend repo root);
// regenerate them there instead of editing by hand.

import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import type {
  ApiErrorBody,
  EstimateResponse,
  ObservatoryResponse,
  ParseResponse,
} from "../src/types.js";

function fixturePath(name: string): string {
  return fileURLToPath(new URL(`../fixtures/${name}`, import.meta.url));
}

export function loadJson<T>(name: string): T {
  return JSON.parse(readFileSync(fixturePath(name), "utf-8")) as T;
}

export function loadBytes(name: string): Uint8Array {
  return new Uint8Array(readFileSync(fixturePath(name)));
}

export const parseReference = (): ParseResponse => loadJson("parse_reference.json");
export const parseFailure = (): ApiErrorBody => loadJson("parse_failure.json");
export const estimateUs = (): EstimateResponse => loadJson("estimate_retrieval_us.json");
export const estimateFr = (): EstimateResponse => loadJson("estimate_retrieval_fr.json");
export const observatory = (): ObservatoryResponse => loadJson("observatory.json");
