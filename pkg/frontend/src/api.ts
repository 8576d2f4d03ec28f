/** Thin fetch client for the engine's HTTP JSON endpoints. */

import {
  ComparePayload,
  FilteredView,
  LayerGraphLayout,
  MetaPayload,
  MetricsBundle,
  NetworkDocument,
  SessionEnvelope,
  SessionRestoreResponse,
  StackPayload,
  UploadReport,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    readonly detail: string,
  ) {
    super(`api error ${status} (${code}): ${detail}`);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  if (!response.ok) {
    let code = "http-error";
    let detail = response.statusText;
    try {
      const body = (await response.json()) as {
        error?: { code?: string; message?: string };
        errors?: { code: string; message: string }[];
      };
      if (body.error) {
        code = body.error.code ?? code;
        detail = body.error.message ?? detail;
      } else if (body.errors && body.errors.length > 0) {
        // validation report from a rejected upload
        code = body.errors[0].code;
        detail = body.errors.map((e) => e.message).join("; ");
      }
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(response.status, code, detail);
  }
  return (await response.json()) as T;
}

function postJson(body: unknown): RequestInit {
  return {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  };
}

/** Client for one engine instance; `base` is "" when served from it. */
export class ApiClient {
  constructor(readonly base = "") {}

  health(): Promise<{ status: string; version: string }> {
    return request(`${this.base}/api/health`);
  }

  network(): Promise<NetworkDocument> {
    return request(`${this.base}/api/network`);
  }

  uploadNetwork(doc: NetworkDocument): Promise<UploadReport> {
    return request(`${this.base}/api/network`, postJson(doc));
  }

  metrics(bins?: number): Promise<MetricsBundle> {
    const suffix = bins === undefined ? "" : `?bins=${bins}`;
    return request(`${this.base}/api/metrics${suffix}`);
  }

  /** Push the full view state; the engine answers with what to draw. */
  view(viewState: Record<string, unknown>): Promise<FilteredView> {
    return request(`${this.base}/api/view`, postJson(viewState));
  }

  meta(mode: "union" | "count" | "sum"): Promise<MetaPayload> {
    return request(`${this.base}/api/meta?mode=${mode}`);
  }

  layoutStack(seed: number): Promise<StackPayload> {
    return request(`${this.base}/api/layout/stack?seed=${seed}`);
  }

  layoutLayerGraph(seed: number): Promise<LayerGraphLayout> {
    return request(`${this.base}/api/layout/layers?mode=force&seed=${seed}`);
  }

  layoutGeographic(): Promise<LayerGraphLayout> {
    return request(`${this.base}/api/layout/layers?mode=geo`);
  }

  compare(layerA: string, layerB: string): Promise<ComparePayload> {
    const params = new URLSearchParams({ a: layerA, b: layerB });
    return request(`${this.base}/api/compare?${params}`);
  }

  session(): Promise<SessionEnvelope> {
    return request(`${this.base}/api/session`);
  }

  loadSession(envelope: SessionEnvelope): Promise<SessionRestoreResponse> {
    return request(`${this.base}/api/session`, postJson(envelope));
  }
}
