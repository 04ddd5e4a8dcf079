/** API payload types, mirroring the service's JSON responses verbatim. */

export interface Span {
  start: number;
  end: number;
  slot: string;
  link_key: string | null;
}

export interface Sentence {
  text: string;
  spans: Span[];
}

export interface SessionOverview {
  n_events: number;
  n_searches: number;
  n_docs_opened_unique: number;
  pct_corpus_reviewed: number | null;
  top_search_terms: string[];
  avg_interaction_rate: number;
  superlatives: Record<string, number>;
  sentences: Sentence[];
}

export interface Card {
  segment_index: number;
  start: number;
  end: number;
  t_start: number;
  t_end: number;
  duration_ms: number;
  counts: Record<string, number>;
  searches: string[];
  docs_opened: Array<[string, string]>;
  avg_doc_dwell_ms: number | null;
  keywords: Array<[string, number]>;
  people: Array<[string, number]>;
  places: Array<[string, number]>;
  highlights: string[];
  notes: string[];
  prose: string;
  prose_spans: Span[];
}

export interface SegmentationParams {
  max_segments: number;
  min_gain_ratio: number;
  min_segment_len: number;
}

export interface SummaryResponse {
  session_id: string;
  params: SegmentationParams;
  overview: SessionOverview;
  cards: Card[];
  link_index: Record<string, number[]>;
  warnings: string[];
}

export interface SessionInfo {
  id: string;
  n_events: number;
}

export interface SessionListing {
  sessions: SessionInfo[];
}
