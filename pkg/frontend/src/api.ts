// Thin typed client over the workshop HTTP API.
// The fetch implementation is injectable so unit tests run without a network.

import type { JoinViewPayload, ScoreSubmission, SessionMetadata, Snapshot, SubmitAck } from "./types.js";

export interface FetchResponseLike {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<FetchResponseLike>;

/** A non-2xx server response, carrying the server's reason verbatim. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

async function parseDetail(response: FetchResponseLike): Promise<string> {
  try {
    const body = (await response.json()) as { detail?: unknown };
    if (body && typeof body.detail === "string") return body.detail;
    return JSON.stringify(body);
  } catch {
    return `HTTP ${response.status}`;
  }
}

export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch as unknown as FetchLike,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      throw new ApiError(response.status, await parseDetail(response));
    }
    return (await response.json()) as T;
  }

  createSession(payload: unknown): Promise<SessionMetadata> {
    return this.request("/sessions", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  openSession(sessionId: string): Promise<SessionMetadata> {
    return this.request(`/sessions/${sessionId}/open`, { method: "POST" });
  }

  closeSession(sessionId: string): Promise<Snapshot> {
    return this.request(`/sessions/${sessionId}/close`, { method: "POST" });
  }

  metadata(sessionId: string): Promise<SessionMetadata> {
    return this.request(`/sessions/${sessionId}`);
  }

  snapshot(sessionId: string): Promise<Snapshot> {
    return this.request(`/sessions/${sessionId}/snapshot`);
  }

  join(sessionId: string, expertId: string): Promise<JoinViewPayload> {
    return this.request(`/sessions/${sessionId}/view?expert=${encodeURIComponent(expertId)}`);
  }

  submitScore(sessionId: string, submission: ScoreSubmission): Promise<SubmitAck> {
    return this.request(`/sessions/${sessionId}/scores`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(submission),
    });
  }
}
