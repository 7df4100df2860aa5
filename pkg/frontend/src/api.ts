/**
 * Thin typed client for the exploration service. All numerical work happens
 * server side; this module only moves JSON.
 */

import type {
  ColumnsResponse,
  ExplorationResponse,
  Interval,
  ModelInfo,
  PointsResponse,
  SensitivityResponse,
  SessionResponse,
} from "./types.js";

export class ApiError extends Error {
  readonly status: number;
  /** service error type, e.g. "UnknownSession" or "ModelNotLoaded" */
  readonly kind: string;

  constructor(status: number, kind: string, detail: string) {
    super(detail);
    this.name = "ApiError";
    this.status = status;
    this.kind = kind;
  }
}

export interface BoundsRequest {
  bounds: Record<string, Interval>;
  tolerance?: number;
  k?: number;
}

export interface SensitivityRequest {
  axis: string;
  overrides?: Record<string, number>;
  n_samples?: number;
}

/** The surface the widgets depend on; ApiClient is the HTTP implementation. */
export interface ExplorationApi {
  columns(dataset?: string): Promise<ColumnsResponse>;
  createSession(body?: { dataset?: string; n?: number; seed?: number }): Promise<SessionResponse>;
  points(sessionId: string): Promise<PointsResponse>;
  updateBounds(
    sessionId: string,
    body: BoundsRequest,
    signal?: AbortSignal,
  ): Promise<ExplorationResponse>;
  sensitivity(
    sessionId: string,
    body: SensitivityRequest,
    signal?: AbortSignal,
  ): Promise<SensitivityResponse>;
  exportRows(sessionId: string, rows: number[]): Promise<string>;
  modelInfo(): Promise<ModelInfo>;
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient implements ExplorationApi {
  constructor(
    private readonly base: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async send(path: string, init: RequestInit): Promise<Response> {
    const res = await this.fetchFn(this.base + path, init);
    if (!res.ok) {
      let kind = "HttpError";
      let detail = `${res.status} ${res.statusText}`;
      try {
        const body = (await res.json()) as { error?: string; detail?: string };
        if (body && typeof body === "object") {
          kind = body.error ?? kind;
          detail = body.detail ?? detail;
        }
      } catch {
        // non-JSON error body, keep the status line
      }
      throw new ApiError(res.status, kind, detail);
    }
    return res;
  }

  private async getJson<T>(path: string): Promise<T> {
    const res = await this.send(path, { method: "GET" });
    return (await res.json()) as T;
  }

  private async postJson<T>(path: string, body: unknown, signal?: AbortSignal): Promise<T> {
    const res = await this.send(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
    return (await res.json()) as T;
  }

  columns(dataset?: string): Promise<ColumnsResponse> {
    const query = dataset ? `?dataset=${encodeURIComponent(dataset)}` : "";
    return this.getJson(`/api/columns${query}`);
  }

  createSession(
    body: { dataset?: string; n?: number; seed?: number } = {},
  ): Promise<SessionResponse> {
    return this.postJson("/api/sessions", body);
  }

  points(sessionId: string): Promise<PointsResponse> {
    return this.getJson(`/api/sessions/${sessionId}/points`);
  }

  updateBounds(
    sessionId: string,
    body: BoundsRequest,
    signal?: AbortSignal,
  ): Promise<ExplorationResponse> {
    return this.postJson(`/api/sessions/${sessionId}/bounds`, body, signal);
  }

  sensitivity(
    sessionId: string,
    body: SensitivityRequest,
    signal?: AbortSignal,
  ): Promise<SensitivityResponse> {
    return this.postJson(`/api/sessions/${sessionId}/sensitivity`, body, signal);
  }

  async exportRows(sessionId: string, rows: number[]): Promise<string> {
    const res = await this.send(`/api/sessions/${sessionId}/export`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ rows }),
    });
    return res.text();
  }

  modelInfo(): Promise<ModelInfo> {
    return this.getJson("/api/model");
  }
}
