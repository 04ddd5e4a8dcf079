/** View state and the single reducer every UI transition goes through. */

import type { SummaryResponse } from "./types.js";

export type Mode = "prose" | "list";

export const SLIDER_MIN = 1;
export const SLIDER_MAX = 50;
export const DEFAULT_K = 11;

export interface ViewState {
  sessionId: string | null;
  /** Segment-count slider value; the server's echoed params drive it after a load. */
  k: number;
  mode: Mode;
  hoverTerm: string | null;
  summary: SummaryResponse | null;
  /** Non-blocking error text; a failed refetch keeps the previous summary. */
  error: string | null;
  loading: boolean;
}

export type Action =
  | { type: "session-selected"; sessionId: string }
  | { type: "slider-moved"; k: number }
  | { type: "fetch-started" }
  | { type: "summary-loaded"; summary: SummaryResponse }
  | { type: "fetch-failed"; message: string }
  | { type: "mode-toggled" }
  | { type: "term-hovered"; term: string }
  | { type: "hover-cleared" };

export function initialState(): ViewState {
  return {
    sessionId: null,
    k: DEFAULT_K,
    mode: "prose",
    hoverTerm: null,
    summary: null,
    error: null,
    loading: false,
  };
}

export const clampK = (k: number): number =>
  Math.min(SLIDER_MAX, Math.max(SLIDER_MIN, Math.round(k)));

export function reduce(state: ViewState, action: Action): ViewState {
  switch (action.type) {
    case "session-selected":
      return { ...state, sessionId: action.sessionId, summary: null, hoverTerm: null };
    case "slider-moved":
      return { ...state, k: clampK(action.k) };
    case "fetch-started":
      return { ...state, loading: true };
    case "summary-loaded":
      // Echo rule: the displayed k is whatever the server actually applied.
      return {
        ...state,
        summary: action.summary,
        k: clampK(action.summary.params.max_segments),
        hoverTerm: null,
        error: null,
        loading: false,
      };
    case "fetch-failed":
      return { ...state, error: action.message, loading: false };
    case "mode-toggled":
      return { ...state, mode: state.mode === "prose" ? "list" : "prose" };
    case "term-hovered":
      return { ...state, hoverTerm: action.term };
    case "hover-cleared":
      return { ...state, hoverTerm: null };
  }
}

type Listener = (state: ViewState, action: Action) => void;

/** Minimal observable store around the reducer. */
export class Store {
  private state: ViewState;
  private listeners: Listener[] = [];

  constructor(initial: ViewState = initialState()) {
    this.state = initial;
  }

  get(): ViewState {
    return this.state;
  }

  dispatch(action: Action): ViewState {
    this.state = reduce(this.state, action);
    for (const fn of this.listeners) fn(this.state, action);
    return this.state;
  }

  subscribe(fn: Listener): () => void {
    this.listeners.push(fn);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== fn);
    };
  }
}
