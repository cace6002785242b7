// Typed client for the session service.  Non-2xx responses surface as
// ApiError carrying the service's domain error code verbatim.

import type {
  ActionDoc,
  DeltaDoc,
  HistoryEntryDoc,
  PlanResultDoc,
  StateDoc,
  VerifyReportDoc,
} from "./types.js";

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ status: number; json(): Promise<unknown> }>;

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

export class Client {
  constructor(
    private base: string,
    private fetcher: FetchLike,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const resp = await this.fetcher(this.base + path, {
      method,
      headers: { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const doc = (await resp.json()) as Record<string, unknown>;
    if (resp.status >= 400) {
      throw new ApiError(
        resp.status,
        String(doc["error"] ?? "unknown"),
        String(doc["message"] ?? resp.status),
      );
    }
    return doc as T;
  }

  createSession(spec: string) {
    return this.request<{ session: string; state: StateDoc }>("POST", "/sessions", {
      spec,
    });
  }

  history(sid: string) {
    return this.request<{ entries: HistoryEntryDoc[] }>(
      "GET",
      `/sessions/${sid}/history`,
    );
  }

  applyAction(sid: string, action: ActionDoc) {
    return this.request<{ index: number; state: StateDoc; delta: DeltaDoc }>(
      "POST",
      `/sessions/${sid}/actions`,
      action,
    );
  }

  truncate(sid: string, index: number) {
    return this.request<{ index: number; state: StateDoc }>(
      "POST",
      `/sessions/${sid}/truncate`,
      { index },
    );
  }

  plan(sid: string, actor: string, goal: string) {
    return this.request<{ results: PlanResultDoc[] }>(
      "POST",
      `/sessions/${sid}/plan`,
      { actor, goal },
    );
  }

  preview(pid: string) {
    return this.request<{ state: StateDoc; dot: string }>(
      "GET",
      `/previews/${pid}`,
    );
  }

  verify(sid: string, body: { invariant: string; mode: string; depth?: number; samples?: number; seed?: number }) {
    return this.request<VerifyReportDoc>("POST", `/sessions/${sid}/verify`, body);
  }

  query(sid: string, kind: "access" | "holders", perm?: string) {
    const q = kind === "holders" ? `kind=holders&perm=${perm}` : "kind=access";
    return this.request<{ principals: string[] }>(
      "GET",
      `/sessions/${sid}/query?${q}`,
    );
  }
}
