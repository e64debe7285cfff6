// Typed client for the seed-session JSON API.  Every algebra string in the
// payloads is passed through verbatim; the client never computes.

export interface RenderedSeed {
  rank: number;
  cluster: string[];
  exchange: string[];
  hat_denominators: string[];
  cluster_names: string[] | null;
  orbit: string | null;
}

export interface SessionReply {
  session: string;
  seed: RenderedSeed;
}

export interface PathReply {
  session: string;
  path: number[];
  seed: RenderedSeed;
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(url, init);
  } catch (err) {
    throw new ApiError(0, `server unreachable: ${String(err)}`);
  }
  const body = (await response.json().catch(() => ({}))) as Record<string, unknown>;
  if (!response.ok) {
    const message = typeof body.error === "string" ? body.error : response.statusText;
    throw new ApiError(response.status, message);
  }
  return body as T;
}

export class ApiClient {
  constructor(readonly baseUrl: string) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + path;
  }

  listSeeds(): Promise<{ seeds: string[] }> {
    return request(this.url("/seeds"));
  }

  createSession(seed: string): Promise<SessionReply> {
    return request(this.url("/session"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ seed }),
    });
  }

  mutate(session: string, slot: number): Promise<SessionReply> {
    return request(this.url(`/session/${session}/mutate`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ slot }),
    });
  }

  undo(session: string): Promise<SessionReply> {
    return request(this.url(`/session/${session}/undo`), { method: "POST" });
  }

  path(session: string): Promise<PathReply> {
    return request(this.url(`/session/${session}/path`));
  }
}
