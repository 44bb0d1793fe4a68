/**
 * Thin client for the analysis service. The UI talks only to the /v1
 * endpoints; in-flight analyze requests are cancelled when a newer edit
 * supersedes them.
 */

import type { VerdictResponse } from "./witness.js";

export interface ServiceError {
  type: string;
  message: string;
  span?: [number, number];
  violations?: { code: string; message: string }[];
}

export class ApiError extends Error {
  constructor(readonly status: number, readonly detail: ServiceError) {
    super(detail.message);
    this.name = "ApiError";
  }
}

export class OfflineError extends Error {
  constructor() {
    super("analysis service unreachable");
    this.name = "OfflineError";
  }
}

export class AnalysisClient {
  private inflight: AbortController | null = null;

  constructor(readonly baseUrl: string = "") {}

  /** POST /v1/analyze, cancelling any previous outstanding request. */
  async analyze(graphText: string): Promise<VerdictResponse> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    const body = await this.post("/v1/analyze", { graph_text: graphText }, controller.signal);
    return body as VerdictResponse;
  }

  async minsets(graphText: string, outcome: "Y0" | "Y1"): Promise<any> {
    return this.post("/v1/minsets", { graph_text: graphText, outcome });
  }

  async health(): Promise<boolean> {
    try {
      const r = await fetch(`${this.baseUrl}/v1/health`);
      return r.ok;
    } catch {
      return false;
    }
  }

  private async post(path: string, payload: unknown, signal?: AbortSignal): Promise<unknown> {
    let response: Response;
    try {
      response = await fetch(`${this.baseUrl}${path}`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(payload),
        signal,
      });
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") throw err;
      throw new OfflineError();
    }
    const body = await response.json().catch(() => ({}));
    if (!response.ok) {
      const detail: ServiceError = (body as any)?.error ?? {
        type: "HttpError",
        message: `request failed with ${response.status}`,
      };
      throw new ApiError(response.status, detail);
    }
    return body;
  }
}
