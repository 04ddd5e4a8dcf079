/** Error paths: blocking banner on first load, non-blocking toast afterward. */

import { beforeEach, describe, expect, it } from "vitest";

import { boot } from "../src/app.js";
import type { FetchLike } from "../src/api.js";
import { errorResponse, fixtureFetch, mountShell, okResponse, SESSIONS } from "./helpers.js";

beforeEach(() => {
  mountShell();
});

describe("error handling", () => {
  it("shows the error banner when the session listing fails", async () => {
    const failing: FetchLike = async () => errorResponse(500);
    await boot(document, { fetchFn: failing });
    const banner = document.querySelector<HTMLElement>("#error-banner")!;
    expect(banner.classList.contains("hidden")).toBe(false);
    expect(banner.textContent).toContain("500");
    expect(document.querySelector("#topbar")).not.toBeNull();
  });

  it("shows the error banner when the first summary fetch fails", async () => {
    const fetchFn: FetchLike = async (url) =>
      url === "/api/sessions" ? okResponse(SESSIONS) : errorResponse(503);
    await boot(document, { fetchFn });
    const banner = document.querySelector<HTMLElement>("#error-banner")!;
    expect(banner.classList.contains("hidden")).toBe(false);
    expect(document.querySelectorAll("#card-grid .card").length).toBe(0);
  });

  it("keeps the previous cards and shows a toast when a refetch fails", async () => {
    const base = fixtureFetch();
    let failNext = false;
    const fetchFn: FetchLike = async (url) => (failNext ? errorResponse(500) : base(url));
    const handle = await boot(document, { fetchFn });
    expect(document.querySelectorAll("#card-grid .card").length).toBe(11);

    failNext = true;
    await handle.commit(5);
    expect(document.querySelectorAll("#card-grid .card").length).toBe(11);
    const toast = document.querySelector<HTMLElement>("#toast")!;
    expect(toast.classList.contains("hidden")).toBe(false);
    expect(document.querySelector("#error-banner")!.classList.contains("hidden")).toBe(true);
    expect(handle.store.get().summary).not.toBeNull();
  });

  it("recovers after a failed refetch once the next fetch succeeds", async () => {
    const base = fixtureFetch();
    let failNext = false;
    const fetchFn: FetchLike = async (url) => (failNext ? errorResponse(500) : base(url));
    const handle = await boot(document, { fetchFn });
    failNext = true;
    await handle.commit(5);
    failNext = false;
    await handle.commit(5);
    expect(document.querySelectorAll("#card-grid .card").length).toBe(5);
    expect(handle.store.get().error).toBeNull();
  });
});
