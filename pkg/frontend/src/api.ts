/** HTTP client for the summary service, with a latest-wins summary fetcher. */

import type { SessionListing, SummaryResponse } from "./types.js";

/** Structural subset of fetch so tests can stub responses cheaply. */
export interface FetchResponse {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}
export type FetchLike = (url: string) => Promise<FetchResponse>;

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

const getJson = async (fetchFn: FetchLike, url: string): Promise<unknown> => {
  const res = await fetchFn(url);
  if (!res.ok) throw new ApiError(res.status, `GET ${url} failed with ${res.status}`);
  return res.json();
};

export const summaryUrl = (sessionId: string, k: number): string =>
  `/api/sessions/${encodeURIComponent(sessionId)}/summary?segments=${k}`;

export async function listSessions(fetchFn: FetchLike = fetch): Promise<SessionListing> {
  return (await getJson(fetchFn, "/api/sessions")) as SessionListing;
}

/**
 * Latest-wins summary fetcher: at most one in-flight request is honored.
 * A request superseded by a newer one resolves to null, whatever order the
 * responses actually arrive in.
 */
export class SummaryClient {
  private latest = 0;

  constructor(private fetchFn: FetchLike = fetch) {}

  async load(sessionId: string, k: number): Promise<SummaryResponse | null> {
    const id = ++this.latest;
    const res = await this.fetchFn(summaryUrl(sessionId, k));
    if (id !== this.latest) return null;
    if (!res.ok) throw new ApiError(res.status, `summary fetch failed with ${res.status}`);
    const data = (await res.json()) as SummaryResponse;
    return id === this.latest ? data : null;
  }
}
