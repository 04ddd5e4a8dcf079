/** Centralized color tokens: one place owns the role-to-color encoding. */

export const COLORS = {
  /** Search information: queries, search counts. */
  search: "#1b7f3b",
  /** Document open information: titles, document counts. */
  document: "#c0392b",
  /** Segment time bar at the top of each card. */
  timeBar: "#1d6fd1",
  /** Session overview banner background. */
  overview: "#fdf3c8",
} as const;

/** Install the tokens as CSS custom properties so the stylesheet can use them. */
export function installColorTokens(root: HTMLElement): void {
  root.style.setProperty("--color-search", COLORS.search);
  root.style.setProperty("--color-document", COLORS.document);
  root.style.setProperty("--color-time-bar", COLORS.timeBar);
  root.style.setProperty("--color-overview", COLORS.overview);
}
