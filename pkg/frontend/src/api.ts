// Thin typed client for the /v1 endpoints. All estimation happens server
// side; this module only moves JSON (and raw CSV bytes) across the wire.

import type {
  ApiErrorBody,
  EstimateRequestBody,
  EstimateResponse,
  ObservatoryResponse,
  ParseResponse,
} from "./types.js";

export class ApiFailure extends Error {
  constructor(
    readonly status: number,
    readonly body: ApiErrorBody,
  ) {
    super(body.error.message);
    this.name = "ApiFailure";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class Client {
  // fetch is injectable so tests can run against recorded fixtures.
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.base + path, init);
    const body = await response.json();
    if (!response.ok) {
      throw new ApiFailure(response.status, body as ApiErrorBody);
    }
    return body as T;
  }

  parse(description: string): Promise<ParseResponse> {
    return this.json("/v1/parse", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ description }),
    });
  }

  estimate(body: EstimateRequestBody): Promise<EstimateResponse> {
    return this.json("/v1/estimate", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  observatory(): Promise<ObservatoryResponse> {
    return this.json("/v1/observatory");
  }

  // Returns the server's CSV bytes untouched; the download must be
  // byte-identical to GET /v1/observatory?format=csv.
  async observatoryCsv(): Promise<Uint8Array> {
    const response = await this.fetchImpl(this.base + "/v1/observatory?format=csv");
    if (!response.ok) {
      throw new ApiFailure(response.status, (await response.json()) as ApiErrorBody);
    }
    return new Uint8Array(await response.arrayBuffer());
  }
}
