import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiError, SessionApi } from "./api";

function mockFetch(status: number, body: unknown) {
  const fn = vi.fn().mockResolvedValue({
    ok: status < 400,
    status,
    statusText: status === 409 ? "Conflict" : "OK",
    json: () => Promise.resolve(body),
  });
  vi.stubGlobal("fetch", fn);
  return fn;
}

afterEach(() => vi.unstubAllGlobals());

describe("SessionApi", () => {
  it("creates sessions with mode and seed", async () => {
    const fetchFn = mockFetch(200, { id: "abc" });
    const api = new SessionApi("http://host");
    const res = await api.createSession("optimizer_driven", 7);
    expect(res).toEqual({ id: "abc" });
    const [url, init] = fetchFn.mock.calls[0];
    expect(url).toBe("http://host/api/sessions");
    expect(JSON.parse(init.body)).toEqual({
      mode: "optimizer_driven",
      cfg: { seed: 7 },
    });
  });

  it("posts synthetic evaluations by default", async () => {
    const fetchFn = mockFetch(200, {});
    const api = new SessionApi();
    const design = { D: 0.5, k: 0.2, G: 5, A: 1.3 };
    await api.evaluate("s1", design);
    const [url, init] = fetchFn.mock.calls[0];
    expect(url).toBe("/api/sessions/s1/evaluations");
    expect(JSON.parse(init.body)).toEqual({ design, source: "synthetic" });
  });

  it("posts manual metrics when provided", async () => {
    const fetchFn = mockFetch(200, {});
    const api = new SessionApi();
    await api.evaluate(
      "s1",
      { D: 0.5, k: 0.2, G: 5, A: 1.3 },
      { mean_time_ms: 1250, mean_error_cm: 0.5 },
    );
    const body = JSON.parse(fetchFn.mock.calls[0][1].body);
    expect(body.source).toBe("manual");
    expect(body.metrics).toEqual({ mean_time_ms: 1250, mean_error_cm: 0.5 });
  });

  it("sends the three picks to the decision endpoint", async () => {
    const fetchFn = mockFetch(200, { evaluation_count: 4 });
    const api = new SessionApi();
    await api.decide("s1", [2, 2, 5]);
    const [url, init] = fetchFn.mock.calls[0];
    expect(url).toBe("/api/sessions/s1/decision");
    expect(JSON.parse(init.body)).toEqual({ picks: [2, 2, 5] });
  });

  it("raises ApiError with the server's explanation", async () => {
    mockFetch(409, { detail: "pending proposal must be evaluated first" });
    const api = new SessionApi();
    const err = await api.getProposal("s1").catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(409);
    expect(err.detail).toBe("pending proposal must be evaluated first");
  });
});
