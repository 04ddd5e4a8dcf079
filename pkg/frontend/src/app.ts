/** Application bootstrap: load sessions, wire controls, render on state change. */

import { listSessions, SummaryClient, type FetchLike } from "./api.js";
import { installColorTokens } from "./colors.js";
import { debounce } from "./debounce.js";
import { DEFAULT_K, SLIDER_MAX, SLIDER_MIN, Store, type ViewState } from "./state.js";
import {
  applyBrush,
  renderCards,
  renderOverview,
  wireBrush,
  wireOverviewHover,
  wireTooltip,
} from "./render.js";

export interface BootOptions {
  fetchFn?: FetchLike;
  /** Slider commit debounce; tests shorten it. */
  debounceMs?: number;
}

export interface AppHandle {
  store: Store;
  /** Fetch the current session's summary at k; latest-wins on races. */
  commit: (k: number) => Promise<void>;
}

const q = <T extends HTMLElement>(root: Document, sel: string): T => {
  const node = root.querySelector<T>(sel);
  if (!node) throw new Error(`missing element: ${sel}`);
  return node;
};

export async function boot(root: Document, opts: BootOptions = {}): Promise<AppHandle> {
  const fetchFn = opts.fetchFn ?? ((url: string) => fetch(url));
  const select = q<HTMLSelectElement>(root, "#session-select");
  const slider = q<HTMLInputElement>(root, "#segment-slider");
  const sliderValue = q<HTMLElement>(root, "#slider-value");
  const modeToggle = q<HTMLButtonElement>(root, "#mode-toggle");
  const errorBanner = q<HTMLElement>(root, "#error-banner");
  const warningStrip = q<HTMLElement>(root, "#warning-strip");
  const banner = q<HTMLElement>(root, "#overview-banner");
  const grid = q<HTMLElement>(root, "#card-grid");
  const toast = q<HTMLElement>(root, "#toast");
  const tooltip = q<HTMLElement>(root, "#tooltip");

  installColorTokens(root.documentElement);
  slider.min = String(SLIDER_MIN);
  slider.max = String(SLIDER_MAX);

  const store = new Store();
  const client = new SummaryClient(fetchFn);

  let toastTimer: ReturnType<typeof setTimeout> | undefined;
  const showToast = (message: string): void => {
    toast.textContent = message;
    toast.classList.remove("hidden");
    if (toastTimer !== undefined) clearTimeout(toastTimer);
    toastTimer = setTimeout(() => toast.classList.add("hidden"), 4000);
  };
  const showErrorBanner = (message: string): void => {
    errorBanner.textContent = message;
    errorBanner.classList.remove("hidden");
  };

  const renderAll = (state: ViewState): void => {
    if (!state.summary) return;
    errorBanner.classList.add("hidden");
    renderOverview(state.summary.overview, banner);
    renderCards(state.summary, state.mode, grid);
    slider.value = String(state.k);
    sliderValue.textContent = String(state.k);
    if (state.summary.warnings.length > 0) {
      warningStrip.textContent = state.summary.warnings.join(" · ");
      warningStrip.classList.remove("hidden");
    } else {
      warningStrip.classList.add("hidden");
    }
  };

  store.subscribe((state, action) => {
    switch (action.type) {
      case "summary-loaded":
        renderAll(state);
        break;
      case "mode-toggled": {
        if (!state.summary) break;
        // Toggle preserves scroll position: re-render, then restore offsets.
        const scroller = root.scrollingElement ?? root.documentElement;
        const page = scroller.scrollTop;
        const inner = grid.scrollTop;
        renderCards(state.summary, state.mode, grid);
        scroller.scrollTop = page;
        grid.scrollTop = inner;
        modeToggle.textContent = state.mode === "prose" ? "List view" : "Prose view";
        break;
      }
      case "term-hovered":
      case "hover-cleared":
        if (state.summary) applyBrush(state.hoverTerm, state.summary.link_index, grid);
        break;
      case "fetch-failed":
        // A failed refetch keeps the previous cards; only the very first
        // load gets the blocking banner.
        if (state.summary) showToast(state.error ?? "request failed");
        else showErrorBanner(state.error ?? "request failed");
        break;
      default:
        break;
    }
  });

  const commit = async (k: number): Promise<void> => {
    const sessionId = store.get().sessionId;
    if (sessionId === null) return;
    store.dispatch({ type: "fetch-started" });
    try {
      const summary = await client.load(sessionId, k);
      if (summary !== null) store.dispatch({ type: "summary-loaded", summary });
    } catch (err) {
      store.dispatch({ type: "fetch-failed", message: String(err) });
    }
  };

  const debouncedCommit = debounce((k: number) => {
    void commit(k);
  }, opts.debounceMs ?? 250);

  slider.addEventListener("input", () => {
    store.dispatch({ type: "slider-moved", k: Number(slider.value) });
    const k = store.get().k;
    sliderValue.textContent = String(k);
    debouncedCommit(k);
  });

  modeToggle.addEventListener("click", () => {
    store.dispatch({ type: "mode-toggled" });
  });

  select.addEventListener("change", () => {
    store.dispatch({ type: "session-selected", sessionId: select.value });
    void commit(store.get().k);
  });

  wireBrush(grid, (term) => {
    store.dispatch(term !== null ? { type: "term-hovered", term } : { type: "hover-cleared" });
  });
  wireOverviewHover(banner, grid);
  wireTooltip(grid, tooltip);

  try {
    const listing = await listSessions(fetchFn);
    select.replaceChildren();
    for (const info of listing.sessions) {
      const option = root.createElement("option");
      option.value = info.id;
      option.textContent = `${info.id} (${info.n_events} events)`;
      select.append(option);
    }
    const first = listing.sessions[0];
    if (first === undefined) {
      showErrorBanner("workspace has no sessions");
    } else {
      select.value = first.id;
      store.dispatch({ type: "session-selected", sessionId: first.id });
      await commit(DEFAULT_K);
    }
  } catch (err) {
    showErrorBanner(String(err));
  }

  return { store, commit };
}
