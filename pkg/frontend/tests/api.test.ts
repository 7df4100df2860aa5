import { describe, expect, test } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";

interface Recorded {
  url: string;
  init?: RequestInit;
}

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

function recordingClient(reply: () => Response): { client: ApiClient; calls: Recorded[] } {
  const calls: Recorded[] = [];
  const client = new ApiClient("http://host:1", (url, init) => {
    calls.push({ url, init });
    return Promise.resolve(reply());
  });
  return { client, calls };
}

describe("request shaping", () => {
  test("columns hits /api/columns, optionally with a dataset", async () => {
    const { client, calls } = recordingClient(() => jsonResponse({ columns: [] }));
    await client.columns();
    await client.columns("tiny set");
    expect(calls[0].url).toBe("http://host:1/api/columns");
    expect(calls[1].url).toBe("http://host:1/api/columns?dataset=tiny%20set");
    expect(calls[0].init?.method).toBe("GET");
  });

  test("session creation posts its options as JSON", async () => {
    const { client, calls } = recordingClient(() =>
      jsonResponse({ session_id: "s", row_count: 10 }),
    );
    const session = await client.createSession({ n: 500, seed: 3 });
    expect(session.session_id).toBe("s");
    expect(calls[0].url).toBe("http://host:1/api/sessions");
    expect(calls[0].init?.method).toBe("POST");
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({ n: 500, seed: 3 });
    expect(new Headers(calls[0].init?.headers).get("content-type")).toBe("application/json");
  });

  test("bounds updates carry the payload and the abort signal", async () => {
    const { client, calls } = recordingClient(() =>
      jsonResponse({
        labels: [],
        label_names: {},
        match_count: 0,
        soft_count: 0,
        feasible: true,
        tolerance: 0,
        bounds: {},
        ranking: null,
      }),
    );
    const ctl = new AbortController();
    await client.updateBounds("sid", { bounds: { Si: [0.5, null] }, tolerance: 0 }, ctl.signal);
    expect(calls[0].url).toBe("http://host:1/api/sessions/sid/bounds");
    expect(calls[0].init?.signal).toBe(ctl.signal);
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({
      bounds: { Si: [0.5, null] },
      tolerance: 0,
    });
  });

  test("sensitivity posts axis and overrides", async () => {
    const { client, calls } = recordingClient(() =>
      jsonResponse({ axis: "Si", anchor: {}, x: [], outputs: {}, derivatives: {} }),
    );
    await client.sensitivity("sid", { axis: "Si", overrides: { Mg: 1.2 } });
    expect(calls[0].url).toBe("http://host:1/api/sessions/sid/sensitivity");
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({
      axis: "Si",
      overrides: { Mg: 1.2 },
    });
  });

  test("export returns the raw CSV text", async () => {
    const { client, calls } = recordingClient(
      () => new Response("source_row_id,Si\n3,0.5\n", { status: 200 }),
    );
    const text = await client.exportRows("sid", [3]);
    expect(calls[0].url).toBe("http://host:1/api/sessions/sid/export");
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({ rows: [3] });
    expect(text).toBe("source_row_id,Si\n3,0.5\n");
  });

  test("model info is a plain GET", async () => {
    const { client, calls } = recordingClient(() =>
      jsonResponse({ loaded: false, layer_dims: null, residual_report: null }),
    );
    const info = await client.modelInfo();
    expect(calls[0].url).toBe("http://host:1/api/model");
    expect(info.loaded).toBe(false);
  });
});

describe("error mapping", () => {
  test("service errors surface their type and detail", async () => {
    const { client } = recordingClient(() =>
      jsonResponse({ error: "UnknownSession", detail: "unknown session: nope" }, 404),
    );
    const err = await client.points("nope").catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    const apiErr = err as ApiError;
    expect(apiErr.status).toBe(404);
    expect(apiErr.kind).toBe("UnknownSession");
    expect(apiErr.message).toBe("unknown session: nope");
  });

  test("a non-JSON error body falls back to the status line", async () => {
    const { client } = recordingClient(
      () => new Response("<html>bad gateway</html>", { status: 502, statusText: "Bad Gateway" }),
    );
    const err = await client.modelInfo().catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).kind).toBe("HttpError");
    expect((err as ApiError).status).toBe(502);
  });
});
