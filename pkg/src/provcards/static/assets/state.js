/** View state and the single reducer every UI transition goes through. */
export const SLIDER_MIN = 1;
export const SLIDER_MAX = 50;
export const DEFAULT_K = 11;
export function initialState() {
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
export const clampK = (k) => Math.min(SLIDER_MAX, Math.max(SLIDER_MIN, Math.round(k)));
export function reduce(state, action) {
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
/** Minimal observable store around the reducer. */
export class Store {
    constructor(initial = initialState()) {
        this.listeners = [];
        this.state = initial;
    }
    get() {
        return this.state;
    }
    dispatch(action) {
        this.state = reduce(this.state, action);
        for (const fn of this.listeners)
            fn(this.state, action);
        return this.state;
    }
    subscribe(fn) {
        this.listeners.push(fn);
        return () => {
            this.listeners = this.listeners.filter((l) => l !== fn);
        };
    }
}
