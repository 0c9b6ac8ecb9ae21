import { afterEach, describe, expect, it, vi } from "vitest";

import { fetchOverview, isHorizon, postFeedback } from "../src/api";
import { jsonResponse } from "./helpers";

const OVERVIEW = {
  query: "((merger) OR (revenue))",
  horizon_seconds: 28800,
  composed_at: 1700100500,
  themes: [],
};

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("fetchOverview", () => {
  it("encodes the query and horizon into the request URL", async () => {
    const mock = vi.fn().mockResolvedValue(jsonResponse(OVERVIEW));
    vi.stubGlobal("fetch", mock);
    const result = await fetchOverview(
      "http://api", "merger OR revenue", "8h", new AbortController().signal,
    );
    expect(mock).toHaveBeenCalledOnce();
    expect(mock.mock.calls[0][0]).toBe(
      "http://api/overview?q=merger+OR+revenue&horizon=8h",
    );
    expect(result.ok).toBe(true);
    if (result.ok) expect(result.value.overview).toEqual(OVERVIEW);
  });

  it("maps the x-cache header onto the view model", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn().mockResolvedValue(jsonResponse(OVERVIEW, 200, { "x-cache": "hit" })),
    );
    const result = await fetchOverview("", "q", "1d", new AbortController().signal);
    expect(result.ok && result.value.cacheHit).toBe(true);
  });

  it("treats a missing x-cache header as a miss", async () => {
    vi.stubGlobal("fetch", vi.fn().mockResolvedValue(jsonResponse(OVERVIEW)));
    const result = await fetchOverview("", "q", "1d", new AbortController().signal);
    expect(result.ok && !result.value.cacheHit).toBe(true);
  });

  it("surfaces a 400 with an offset as a syntax error", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn().mockResolvedValue(
        jsonResponse({ error: "expected a term", offset: 0 }, 400),
      ),
    );
    const result = await fetchOverview("", "(", "1d", new AbortController().signal);
    expect(result).toEqual({
      ok: false,
      error: { kind: "syntax", message: "expected a term", offset: 0 },
    });
  });

  it("surfaces a 400 without an offset as a plain rejection", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn().mockResolvedValue(jsonResponse({ error: "invalid horizon: 'soon'" }, 400)),
    );
    const result = await fetchOverview("", "q", "1d", new AbortController().signal);
    expect(result).toEqual({
      ok: false,
      error: { kind: "rejected", message: "invalid horizon: 'soon'" },
    });
  });

  it("turns a transport failure into a network error result", async () => {
    vi.stubGlobal("fetch", vi.fn().mockRejectedValue(new TypeError("fetch failed")));
    const result = await fetchOverview("", "q", "1d", new AbortController().signal);
    expect(!result.ok && result.error.kind === "network").toBe(true);
  });

  it("rethrows aborts so callers can ignore superseded requests", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn().mockRejectedValue(new DOMException("aborted", "AbortError")),
    );
    await expect(
      fetchOverview("", "q", "1d", new AbortController().signal),
    ).rejects.toThrow("aborted");
  });
});

describe("postFeedback", () => {
  const payload = {
    query: "((merger))",
    theme_summary: "Regulators approved the merger",
    vote: "up" as const,
    comment: "",
  };

  it("posts the payload verbatim as JSON", async () => {
    const mock = vi.fn().mockResolvedValue(jsonResponse({ status: "accepted" }));
    vi.stubGlobal("fetch", mock);
    const result = await postFeedback("http://api", payload);
    expect(result).toEqual({ ok: true });
    const [url, init] = mock.mock.calls[0];
    expect(url).toBe("http://api/feedback");
    expect(init.method).toBe("POST");
    expect(JSON.parse(init.body)).toEqual(payload);
  });

  it("returns the server's message on a 400", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn().mockResolvedValue(
        jsonResponse({ error: "vote must be one of up, down, none" }, 400),
      ),
    );
    const result = await postFeedback("", { ...payload, vote: "up" });
    expect(result).toEqual({ ok: false, message: "vote must be one of up, down, none" });
  });

  it("reports transport failures without throwing", async () => {
    vi.stubGlobal("fetch", vi.fn().mockRejectedValue(new TypeError("boom")));
    const result = await postFeedback("", payload);
    expect(!result.ok && result.message.includes("boom")).toBe(true);
  });
});

describe("isHorizon", () => {
  it.each(["1h", "8h", "1d", "2d"])("accepts %s", (option) => {
    expect(isHorizon(option)).toBe(true);
  });

  it.each(["3h", "", "1w", null])("rejects %s", (option) => {
    expect(isHorizon(option)).toBe(false);
  });
});
