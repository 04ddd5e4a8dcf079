/** Shared test scaffolding: the real page shell, recorded fixtures, fetch stubs. */

import { readFileSync } from "node:fs";
import { join } from "node:path";

import type { FetchLike, FetchResponse } from "../src/api.js";
import type { SessionListing, SummaryResponse } from "../src/types.js";

// Vitest runs with the package root as cwd; import.meta.url is not a file
// URL under the jsdom environment, so resolve from cwd instead.
const SHELL = readFileSync(join(process.cwd(), "index.html"), "utf8");

/** Mount the real index.html body into the jsdom document. */
export function mountShell(): void {
  const start = SHELL.indexOf("<body>") + "<body>".length;
  const end = SHELL.indexOf("</body>");
  document.body.innerHTML = SHELL.slice(start, end);
}

const loadFixture = <T>(name: string): T =>
  JSON.parse(readFileSync(join(process.cwd(), "tests", "fixtures", name), "utf8")) as T;

export const SESSIONS: SessionListing = loadFixture("sessions.json");
export const SUMMARIES: Record<number, SummaryResponse> = {
  1: loadFixture("summary_k1.json"),
  5: loadFixture("summary_k5.json"),
  9: loadFixture("summary_k9.json"),
  11: loadFixture("summary_k11.json"),
};

export const okResponse = (data: unknown): FetchResponse => ({
  ok: true,
  status: 200,
  json: async () => data,
});

export const errorResponse = (status: number): FetchResponse => ({
  ok: false,
  status,
  json: async () => ({ detail: "error" }),
});

/** Fetch stub serving the sessions listing and the recorded summaries. */
export const fixtureFetch = (): FetchLike => async (url: string) => {
  if (url === "/api/sessions") return okResponse(SESSIONS);
  const match = url.match(/segments=(\d+)$/);
  const summary = match === null ? undefined : SUMMARIES[Number(match[1])];
  return summary === undefined ? errorResponse(404) : okResponse(summary);
};

export interface Deferred {
  resolve: (data: unknown) => void;
  reject: (err: Error) => void;
}

/**
 * Fetch stub whose summary responses are resolved manually, so tests can
 * deliver them in any order. The sessions listing resolves immediately.
 */
export function manualFetch(): { fetchFn: FetchLike; pending: Map<number, Deferred> } {
  const pending = new Map<number, Deferred>();
  const fetchFn: FetchLike = (url: string) => {
    if (url === "/api/sessions") return Promise.resolve(okResponse(SESSIONS));
    const match = url.match(/segments=(\d+)$/);
    if (match === null) return Promise.resolve(errorResponse(404));
    const k = Number(match[1]);
    return new Promise<FetchResponse>((resolve, reject) => {
      pending.set(k, {
        resolve: (data) => resolve(okResponse(data)),
        reject,
      });
    });
  };
  return { fetchFn, pending };
}

/** Deterministic small PRNG for sampling (mulberry32). */
export function seededRng(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

/** Sample `n` distinct items deterministically. */
export function sample<T>(items: T[], n: number, seed: number): T[] {
  const pool = [...items];
  const rng = seededRng(seed);
  const out: T[] = [];
  while (out.length < n && pool.length > 0) {
    const idx = Math.floor(rng() * pool.length);
    out.push(pool.splice(idx, 1)[0]!);
  }
  return out;
}

export const hover = (target: Element): void => {
  target.dispatchEvent(new MouseEvent("mouseover", { bubbles: true }));
};

export const unhover = (target: Element): void => {
  target.dispatchEvent(new MouseEvent("mouseout", { bubbles: true }));
};

export const linkedSegments = (grid: Element): Set<number> =>
  new Set(
    [...grid.querySelectorAll<HTMLElement>(".card.linked")].map((card) =>
      Number(card.dataset.segmentIndex),
    ),
  );
