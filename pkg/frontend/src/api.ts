/** Thin typed client for the session HTTP API. All decisions about
 *  objectives, Pareto membership, and proposals live on the server; this
 *  module only moves JSON. */

import type {
  Design,
  ManualMetrics,
  ParetoView,
  Proposal,
  SessionReport,
  SessionView,
} from "./types";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
    this.name = "ApiError";
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(url, {
    headers: { "Content-Type": "application/json" },
    ...init,
  });
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      const body = await resp.json();
      if (typeof body?.detail === "string") detail = body.detail;
      else if (body?.detail) detail = JSON.stringify(body.detail);
    } catch {
      /* non-JSON error body: keep the status text */
    }
    throw new ApiError(resp.status, detail);
  }
  return (await resp.json()) as T;
}

export class SessionApi {
  constructor(readonly baseUrl: string = "") {}

  private url(path: string): string {
    return `${this.baseUrl}${path}`;
  }

  createSession(
    mode: "designer_led" | "optimizer_driven",
    seed = 0,
  ): Promise<{ id: string }> {
    return request(this.url("/api/sessions"), {
      method: "POST",
      body: JSON.stringify({ mode, cfg: { seed } }),
    });
  }

  getSession(id: string): Promise<SessionView> {
    return request(this.url(`/api/sessions/${id}`));
  }

  getProposal(id: string): Promise<Proposal> {
    return request(this.url(`/api/sessions/${id}/proposal`));
  }

  evaluate(id: string, design: Design, metrics?: ManualMetrics): Promise<unknown> {
    const body = metrics
      ? { design, source: "manual", metrics }
      : { design, source: "synthetic" };
    return request(this.url(`/api/sessions/${id}/evaluations`), {
      method: "POST",
      body: JSON.stringify(body),
    });
  }

  recordTest(id: string, design: Design): Promise<unknown> {
    return request(this.url(`/api/sessions/${id}/tests`), {
      method: "POST",
      body: JSON.stringify({ design }),
    });
  }

  getPareto(id: string): Promise<ParetoView> {
    return request(this.url(`/api/sessions/${id}/pareto`));
  }

  decide(id: string, picks: number[]): Promise<SessionReport> {
    return request(this.url(`/api/sessions/${id}/decision`), {
      method: "POST",
      body: JSON.stringify({ picks }),
    });
  }
}
