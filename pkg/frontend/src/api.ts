// Thin typed client over the service endpoints. The fetch implementation is
// injectable so tests can run against canned payloads.

import type {
  ClusterOverlayPayload,
  ClusterViewPayload,
  DiseaseEntry,
  ErrorPayload,
  GeneOverlayPayload,
  GeneViewPayload,
  HighlightMode,
  HighlightPayload,
  SessionInfo,
  UploadReport,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  readonly payload: ErrorPayload;
  readonly status: number;

  constructor(status: number, payload: ErrorPayload) {
    super(`${payload.error_code}: ${payload.message}`);
    this.status = status;
    this.payload = payload;
  }
}

export type DatasetKind = "cluster" | "interaction" | "disease";

export class Api {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(base = "", fetchFn: FetchLike = (...args) => fetch(...args)) {
    this.base = base.replace(/\/$/, "");
    this.fetchFn = fetchFn;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(this.base + path, init);
    if (!resp.ok) {
      let payload: ErrorPayload;
      try {
        payload = (await resp.json()) as ErrorPayload;
      } catch {
        payload = { error_code: "HTTP_" + resp.status, message: resp.statusText };
      }
      throw new ApiError(resp.status, payload);
    }
    return (await resp.json()) as T;
  }

  createSession(seed?: number): Promise<SessionInfo> {
    return this.request("/sessions", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(seed === undefined ? {} : { seed }),
    });
  }

  uploadDataset(sessionId: string, kind: DatasetKind, text: string): Promise<UploadReport> {
    return this.request(`/sessions/${sessionId}/datasets/${kind}`, {
      method: "POST",
      headers: { "content-type": "text/csv" },
      body: text,
    });
  }

  clusterView(sessionId: string, opts: { minOverlap?: number; seed?: number } = {}): Promise<ClusterViewPayload> {
    const params = new URLSearchParams();
    if (opts.minOverlap !== undefined) params.set("min_overlap", String(opts.minOverlap));
    if (opts.seed !== undefined) params.set("seed", String(opts.seed));
    const query = params.toString();
    return this.request(`/sessions/${sessionId}/cluster-view${query ? "?" + query : ""}`);
  }

  geneView(sessionId: string, clusterId: number, seed?: number): Promise<GeneViewPayload> {
    const query = seed === undefined ? "" : `?seed=${seed}`;
    return this.request(`/sessions/${sessionId}/clusters/${clusterId}/gene-view${query}`);
  }

  diseases(sessionId: string): Promise<DiseaseEntry[]> {
    return this.request(`/sessions/${sessionId}/diseases`);
  }

  clusterOverlay(sessionId: string, disease: string, minOverlap?: number): Promise<ClusterOverlayPayload> {
    const params = new URLSearchParams({ disease });
    if (minOverlap !== undefined) params.set("min_overlap", String(minOverlap));
    return this.request(`/sessions/${sessionId}/overlay?${params}`);
  }

  geneOverlay(sessionId: string, disease: string, clusterId: number): Promise<GeneOverlayPayload> {
    const params = new URLSearchParams({ disease, cluster_id: String(clusterId) });
    return this.request(`/sessions/${sessionId}/overlay?${params}`);
  }

  highlight(
    sessionId: string,
    clusterId: number,
    origin: number,
    mode: HighlightMode,
    parameter: number,
  ): Promise<HighlightPayload> {
    const params = new URLSearchParams({
      cluster_id: String(clusterId),
      origin: String(origin),
      mode,
      parameter: String(parameter),
    });
    return this.request(`/sessions/${sessionId}/highlight?${params}`);
  }

  saveSnapshot(sessionId: string, path: string): Promise<{ path: string }> {
    return this.request(`/sessions/${sessionId}/snapshot`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ path }),
    });
  }

  loadSnapshot(path: string): Promise<SessionInfo> {
    return this.request("/snapshots:load", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ path }),
    });
  }
}
