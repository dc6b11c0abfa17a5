// Typed client for the tree service. The UI never computes model math:
// every number it displays is read from one of these payloads.

export type Scenario = "basic" | "outlier" | "mixture";
export type Variant = "axis" | "original" | "mod1" | "mod2";

export interface SimulateResponse {
  schema_version: number;
  dataset_id: string;
  n: number;
  k: number;
  points: number[][];
  labels: number[];
  bbox: number[][];
}

export interface ModelNode {
  alpha?: number[];
  c?: number;
  rule?: number;
  left?: ModelNode;
  right?: ModelNode;
  cuts?: unknown[];
  label?: number;
  reason?: string;
}

export interface FitResponse {
  schema_version: number;
  model_id: string;
  dataset_id: string;
  variant: Variant;
  classes: number[];
  training_error: number;
  n_leaves: number;
  n_internal: number;
  depth: number;
  notes: string[];
  model: { version: number; variant: string; classes: number[]; root: ModelNode };
}

export interface BoundaryResponse {
  schema_version: number;
  model_id: string;
  dataset_id: string;
  resolution: number;
  bbox: number[][];
  x1: number[];
  x2: number[];
  labels: number[];
  border: number[];
}

export interface FetchResponseLike {
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<FetchResponseLike>;

export class ApiHttpError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiHttpError";
  }
}

export class ApiClient {
  constructor(
    private baseUrl = "",
    private fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    const resp = await this.fetchImpl(this.baseUrl + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    const data = (await resp.json()) as Record<string, unknown> | null;
    if (resp.status !== 200) {
      const code = typeof data?.code === "string" ? data.code : "error";
      const message =
        typeof data?.message === "string" ? data.message : `HTTP ${resp.status}`;
      throw new ApiHttpError(resp.status, code, message);
    }
    return data as T;
  }

  simulate(body: Record<string, unknown>): Promise<SimulateResponse> {
    return this.post("/simulate", body);
  }

  fit(body: Record<string, unknown>): Promise<FitResponse> {
    return this.post("/fit", body);
  }

  boundary(body: { model_id: string; resolution: number }): Promise<BoundaryResponse> {
    return this.post("/boundary", body);
  }
}
