import { describe, expect, it } from "vitest";

import { EstimatorSession } from "../src/session.js";
import { estimateFr, estimateUs, parseReference } from "./helpers.js";

const scenario = () => parseReference().scenario;

describe("EstimatorSession revisions", () => {
  it("starts empty", () => {
    const session = new EstimatorSession();
    expect(session.scenario).toBeNull();
    expect(session.result).toBeNull();
    expect(session.history).toEqual([]);
  });

  it("accepts a parse only for the current revision", () => {
    const session = new EstimatorSession();
    const stale = session.setDescription("first text");
    session.setDescription("second text");
    expect(session.applyParse(stale, scenario())).toBe(false);
    expect(session.scenario).toBeNull();
    expect(session.applyParse(session.revision, scenario())).toBe(true);
    expect(session.scenario).not.toBeNull();
  });

  it("drops an estimate that arrives after the scenario changed", () => {
    const session = new EstimatorSession();
    session.setDescription("some workload");
    const launched = session.beginEstimate();
    session.setOverride("country", "FR"); // user edits while request in flight
    expect(session.applyResult(launched, estimateUs())).toBe(false);
    expect(session.result).toBeNull();
  });

  it("last write wins for two in-flight requests on one revision", () => {
    const session = new EstimatorSession();
    session.setDescription("some workload");
    const first = session.beginEstimate();
    const second = session.beginEstimate();
    expect(session.applyResult(first, estimateUs())).toBe(true);
    expect(session.applyResult(second, estimateFr())).toBe(true);
    expect(session.result?.estimate.country_code).toBe("FR");
  });

  it("shows no result until one matching the scenario arrives", () => {
    const session = new EstimatorSession();
    session.setDescription("some workload");
    expect(session.result).toBeNull();
    session.applyResult(session.beginEstimate(), estimateUs());
    expect(session.result?.estimate.country_code).toBe("US");
    session.setOverride("country", "FR");
    expect(session.result).toBeNull(); // stale result never shown
    session.applyResult(session.beginEstimate(), estimateFr());
    expect(session.result?.estimate.country_code).toBe("FR");
  });
});

describe("EstimatorSession request building", () => {
  it("returns null until a model is known", () => {
    const session = new EstimatorSession();
    expect(session.requestBody()).toBeNull();
    session.setDescription("We use GPT-4o-mini, 4,000 uses per month.");
    expect(session.requestBody()).toBeNull(); // parse not applied yet
  });

  it("resolves the parsed scenario into explicit fields", () => {
    const session = new EstimatorSession();
    session.setDescription("We use GPT-4o-mini, 4,000 uses per month.");
    session.applyParse(session.revision, scenario());
    // Defaulted token load and country are omitted; the server re-applies
    // the same catalog defaults for the request type it is told.
    expect(session.requestBody()).toEqual({
      model: "gpt-4o-mini",
      request_type: "chat",
      requests_per_month: 4000,
    });
  });

  it("merges overrides over the parsed fields", () => {
    const session = new EstimatorSession();
    session.setDescription("We use GPT-4o-mini, 4,000 uses per month.");
    session.applyParse(session.revision, scenario());
    session.setOverride("country", "FR");
    session.setOverride("requests_per_month", 1200);
    expect(session.requestBody()).toEqual({
      model: "gpt-4o-mini",
      request_type: "chat",
      requests_per_month: 1200,
      country: "FR",
    });
  });

  it("clears an override set back to undefined", () => {
    const session = new EstimatorSession();
    session.applyParse(session.revision, scenario());
    const before = session.revision;
    session.setOverride("country", "FR");
    session.setOverride("country", undefined);
    expect(session.requestBody()).toEqual({
      model: "gpt-4o-mini",
      request_type: "chat",
      requests_per_month: 4000,
    });
    expect(session.revision).toBe(before + 2); // both edits invalidate results
  });

  it("sends parser-extracted token counts but never defaults", () => {
    const session = new EstimatorSession();
    const parsed = scenario();
    parsed.token_load.input_tokens.value = 750;
    parsed.token_load.output_tokens.value = 250;
    parsed.field_provenance.token_load = "explicit";
    session.applyParse(session.revision, parsed);
    expect(session.requestBody()).toMatchObject({ input_tokens: 750, output_tokens: 250 });
  });

  it("a model override alone is enough, with or without a parse", () => {
    const session = new EstimatorSession();
    session.setOverride("model", "gpt-5-mini");
    expect(session.requestBody()).toEqual({ model: "gpt-5-mini" });
    session.applyParse(session.revision, scenario());
    expect(session.requestBody()).toMatchObject({ model: "gpt-5-mini", request_type: "chat" });
  });

  it("resets overrides and the stale parse when the description changes", () => {
    const session = new EstimatorSession();
    session.setDescription("workload one");
    session.applyParse(session.revision, scenario());
    session.setOverride("country", "FR");
    session.setDescription("workload two");
    expect(session.requestBody()).toBeNull(); // nothing known about the new text
  });
});

describe("EstimatorSession provenance badges", () => {
  it("marks overridden fields explicit and keeps parse badges elsewhere", () => {
    const session = new EstimatorSession();
    session.setDescription("We use GPT-4o-mini, 4,000 uses per month.");
    session.applyParse(session.revision, scenario());
    session.setOverride("input_tokens", 750);
    session.setOverride("output_tokens", 250);
    const badges = session.scenario?.field_provenance;
    expect(badges?.token_load).toBe("explicit");
    expect(badges?.model).toBe("explicit");
    expect(badges?.request_type).toBe("inferred"); // untouched, stays as parsed
    expect(badges?.country).toBe("default");
  });

  it("keeps the inferred badge after the estimate round trip", () => {
    const session = new EstimatorSession();
    session.setDescription("retrieval workload");
    session.applyParse(session.revision, scenario());
    session.setOverride("country", "US");
    session.applyResult(session.beginEstimate(), estimateUs());
    // The request body spells out the inferred request type, so the server
    // reports it "explicit"; the editor must still show what the user did.
    expect(session.result?.scenario.field_provenance.request_type).toBe("explicit");
    expect(session.scenario?.field_provenance.request_type).toBe("inferred");
    expect(session.scenario?.field_provenance.country).toBe("explicit");
    expect(session.scenario?.country_code).toBe("US");
  });
});

describe("EstimatorSession pinning", () => {
  it("pins only a currently-displayed result", () => {
    const session = new EstimatorSession();
    session.setDescription("workload");
    expect(session.pin()).toBe(false);
    session.applyResult(session.beginEstimate(), estimateUs());
    expect(session.pin()).toBe(true);
    session.setOverride("country", "FR");
    expect(session.pin()).toBe(false); // stale result cannot be pinned
    session.applyResult(session.beginEstimate(), estimateFr());
    expect(session.pin()).toBe(true);
    expect(session.history).toHaveLength(2);
    expect(session.history[0]?.result.estimate.country_code).toBe("US");
    expect(session.history[1]?.result.estimate.country_code).toBe("FR");
  });

  it("keeps the pinned scenario/result pair together and unpins by index", () => {
    const session = new EstimatorSession();
    session.setDescription("workload");
    session.applyResult(session.beginEstimate(), estimateUs());
    session.pin();
    const pinned = session.history[0];
    expect(pinned?.scenario).toEqual(pinned?.result.scenario);
    session.unpin(0);
    expect(session.history).toEqual([]);
  });

  it("prefers the server-resolved scenario once a result is current", () => {
    const session = new EstimatorSession();
    session.setDescription("workload");
    session.applyParse(session.revision, scenario());
    expect(session.scenario?.country_code).toBeNull();
    session.applyResult(session.beginEstimate(), estimateUs());
    expect(session.scenario?.country_code).toBe("US");
  });
});
