// Minimal Response stand-in: only the surface api.ts touches, so the tests
// do not depend on undici being wired into the jsdom environment.
export function jsonResponse(
  body: unknown,
  status = 200,
  headers: Record<string, string> = {},
): Response {
  const lowered = Object.fromEntries(
    Object.entries(headers).map(([k, v]) => [k.toLowerCase(), v]),
  );
  return {
    ok: status >= 200 && status < 300,
    status,
    headers: { get: (name: string) => lowered[name.toLowerCase()] ?? null },
    json: () => Promise.resolve(body),
  } as unknown as Response;
}

// Resolves after pending promise chains and a macrotask tick.
export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}

// A fetch that never resolves but honors its AbortSignal.
export function hangingFetch(signal: AbortSignal): Promise<Response> {
  return new Promise((_resolve, reject) => {
    signal.addEventListener("abort", () =>
      reject(new DOMException("aborted", "AbortError")),
    );
  });
}
