// Typed client for the overview service. The JSON bodies here mirror the
// server's wire format field for field; nothing is renamed or reshaped.

export interface KeyStory {
  id: string;
  headline: string;
  source: string;
  ingested_at: number;
}

export interface Theme {
  summary: string;
  score: number;
  size: number;
  key_stories: KeyStory[];
}

export interface Overview {
  query: string;
  horizon_seconds: number;
  composed_at: number;
  themes: Theme[];
}

export const HORIZONS = ["1h", "8h", "1d", "2d"] as const;
export type Horizon = (typeof HORIZONS)[number];

export function isHorizon(value: string | null): value is Horizon {
  return (HORIZONS as readonly string[]).includes(value ?? "");
}

export interface OverviewViewModel {
  overview: Overview;
  cacheHit: boolean;
}

export type OverviewError =
  | { kind: "syntax"; message: string; offset: number }
  | { kind: "rejected"; message: string }
  | { kind: "network"; message: string };

export type OverviewResult =
  | { ok: true; value: OverviewViewModel }
  | { ok: false; error: OverviewError };

// Aborts propagate to the caller so a superseded request can be told apart
// from a failed one; every other failure becomes a result value.
export async function fetchOverview(
  baseUrl: string,
  query: string,
  horizon: Horizon,
  signal: AbortSignal,
): Promise<OverviewResult> {
  const params = new URLSearchParams({ q: query, horizon });
  let response: Response;
  try {
    response = await fetch(`${baseUrl}/overview?${params}`, { signal });
  } catch (err) {
    if (err instanceof DOMException && err.name === "AbortError") {
      throw err;
    }
    return { ok: false, error: { kind: "network", message: String(err) } };
  }
  if (!response.ok) {
    const body = await response.json().catch(() => ({}));
    const message = typeof body.error === "string" ? body.error : "request rejected";
    if (typeof body.offset === "number") {
      return { ok: false, error: { kind: "syntax", message, offset: body.offset } };
    }
    return { ok: false, error: { kind: "rejected", message } };
  }
  const overview: Overview = await response.json();
  return {
    ok: true,
    value: { overview, cacheHit: response.headers.get("x-cache") === "hit" },
  };
}

export type Vote = "up" | "down" | "none";

export interface FeedbackPayload {
  query: string;
  theme_summary: string;
  vote: Vote;
  comment: string;
}

export type FeedbackResult = { ok: true } | { ok: false; message: string };

export async function postFeedback(
  baseUrl: string,
  payload: FeedbackPayload,
): Promise<FeedbackResult> {
  let response: Response;
  try {
    response = await fetch(`${baseUrl}/feedback`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  } catch (err) {
    return { ok: false, message: String(err) };
  }
  if (!response.ok) {
    const body = await response.json().catch(() => ({}));
    const message = typeof body.error === "string" ? body.error : "feedback rejected";
    return { ok: false, message };
  }
  return { ok: true };
}
