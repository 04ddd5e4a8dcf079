"""Per-segment summary cards and the whole-session overview."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Mapping, Sequence

from .entities import EntityExtractor, EntityKind, count_entities
from .model import Document, EventKind, InteractionEvent, Session
from .segmenter import Segment
from .templating import Span, render_template
from .textvec import TermVector, tokenize

TOP_ENTITIES = 5
TOP_SEARCH_TERMS = 5

# Slot -> link key carried on card prose spans, so a UI can tie the
# rendered words back to the structured fields they came from.
_CARD_LINKS = {
    "search_terms": "searches",
    "doc_titles": "docs",
    "keyword_terms": "keywords",
    "people_names": "people",
    "place_names": "places",
}


@dataclass(frozen=True)
class RenderedSentence:
    text: str
    spans: tuple[Span, ...]


@dataclass(frozen=True)
class SegmentSummary:
    """Everything one summary card shows about one segment."""

    segment_index: int
    keywords: tuple[tuple[str, float], ...]
    people: tuple[tuple[str, int], ...]
    places: tuple[tuple[str, int], ...]
    searches: tuple[str, ...]
    docs_opened: tuple[tuple[str, str], ...]
    notes: tuple[str, ...]
    highlights: tuple[str, ...]
    counts: Mapping[str, int]
    duration_ms: int
    avg_doc_dwell_ms: int | None
    prose: str
    prose_spans: tuple[Span, ...]


@dataclass(frozen=True)
class SessionOverview:
    """Session-level statistics, superlatives, and rendered sentences."""

    n_events: int
    n_searches: int
    n_docs_opened_unique: int
    pct_corpus_reviewed: float
    top_search_terms: tuple[str, ...]
    avg_interaction_rate: float
    superlatives: Mapping[str, int]
    sentences: tuple[RenderedSentence, ...]


@lru_cache(maxsize=8)
def _template(name: str) -> str:
    raw = resources.files("provcards.resources").joinpath(name).read_text("utf-8")
    return raw.rstrip("\n")


def humanize_duration(ms: int) -> str:
    """Round a millisecond span to friendly prose like '2 hours 33 minutes'."""
    if ms <= 0:
        return "0 seconds"
    seconds = ms / 1000
    if seconds < 90:
        n = max(1, round(seconds))
        return f"{n} second" + ("" if n == 1 else "s")
    minutes = round(seconds / 60)
    if minutes < 90:
        return f"{minutes} minute" + ("" if minutes == 1 else "s")
    hours, rem = divmod(minutes, 60)
    label = f"{hours} hour" + ("" if hours == 1 else "s")
    if rem:
        label += f" {rem} minute" + ("" if rem == 1 else "s")
    return label


def segment_keywords(centroid: TermVector, k: int) -> list[tuple[str, float]]:
    """Top-k centroid terms by weight, ties broken lexicographically."""
    if k < 1:
        raise ValueError("k must be at least 1")
    ranked = sorted(centroid.weights.items(), key=lambda kv: (-kv[1], kv[0]))
    return ranked[:k]


def _dedupe(values: Sequence[str]) -> list[str]:
    seen: set[str] = set()
    out: list[str] = []
    for v in values:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def summarize_segment(
    session: Session,
    segment: Segment,
    centroid: TermVector,
    extractor: EntityExtractor,
    k_kw: int = 8,
    docs: Mapping[str, Document] | None = None,
    index: int = 0,
) -> SegmentSummary:
    """Build the summary card for one segment.

    Entities are pulled from the bodies of documents the segment touched
    plus the segment's own query, note, and highlight text. Average
    document dwell is the time from each DocOpen to the next session
    event. Without a corpus (degraded mode) document titles fall back to
    their ids.
    """
    order = {ev.seq: i for i, ev in enumerate(session.events)}
    members = [session.events[order[s]] for s in segment.member_event_seqs]

    counts: Counter[str] = Counter(ev.kind.value for ev in members)
    searches = [ev.text for ev in members if ev.kind is EventKind.SEARCH and ev.text]

    docs_opened: list[tuple[str, str]] = []
    seen_docs: set[str] = set()
    for ev in members:
        if ev.kind is EventKind.DOC_OPEN and ev.doc_id not in seen_docs:
            seen_docs.add(ev.doc_id)  # type: ignore[arg-type]
            doc = docs.get(ev.doc_id) if docs else None
            docs_opened.append((ev.doc_id or "", doc.title if doc and doc.title else ev.doc_id or ""))

    notes = tuple(ev.text for ev in members if ev.kind is EventKind.NOTE and ev.text)
    highlights = tuple(ev.text for ev in members if ev.kind is EventKind.HIGHLIGHT and ev.text)

    dwell_total = 0
    dwell_count = 0
    for ev in members:
        if ev.kind is not EventKind.DOC_OPEN:
            continue
        nxt = order[ev.seq] + 1
        if nxt < len(session.events):
            dwell_total += session.events[nxt].timestamp - ev.timestamp
        dwell_count += 1
    avg_dwell = dwell_total // dwell_count if dwell_count else None

    entity_text: list[str] = []
    seen_entity_docs: set[str] = set()
    for ev in members:
        if ev.doc_id and docs and ev.doc_id in docs and ev.doc_id not in seen_entity_docs:
            seen_entity_docs.add(ev.doc_id)
            entity_text.append(docs[ev.doc_id].body)
        if ev.text:
            entity_text.append(ev.text)
    counted = count_entities(extractor.extract("\n".join(entity_text)))
    people = tuple((s, n) for s, kind, n in counted if kind is EntityKind.PERSON)[:TOP_ENTITIES]
    places = tuple((s, n) for s, kind, n in counted if kind is EntityKind.LOCATION)[:TOP_ENTITIES]

    keywords = tuple(segment_keywords(centroid, k_kw))
    duration_ms = segment.t_end - segment.t_start

    slots: dict[str, object] = {
        "n_member_events": len(members),
        "duration_label": humanize_duration(duration_ms),
        "n_searches": counts.get(EventKind.SEARCH.value, 0),
        "search_terms": _dedupe(searches),
        "n_docs": len(docs_opened),
        "doc_titles": [title for _, title in docs_opened],
        "dwell_label": humanize_duration(avg_dwell) if avg_dwell is not None else None,
        "n_plays": counts.get(EventKind.AUDIO_PLAY.value, 0),
        "n_highlights": counts.get(EventKind.HIGHLIGHT.value, 0),
        "n_notes": counts.get(EventKind.NOTE.value, 0),
        "keyword_terms": [t for t, _ in keywords],
        "people_names": [s for s, _ in people],
        "place_names": [s for s, _ in places],
    }
    prose, spans = render_template(_template("card.tmpl"), slots, _CARD_LINKS)

    # Fixed kind order keeps serialized output stable.
    ordered_counts = {k.value: counts[k.value] for k in EventKind if counts.get(k.value)}
    return SegmentSummary(
        segment_index=index,
        keywords=keywords,
        people=people,
        places=places,
        searches=tuple(searches),
        docs_opened=tuple(docs_opened),
        notes=notes,
        highlights=highlights,
        counts=ordered_counts,
        duration_ms=duration_ms,
        avg_doc_dwell_ms=avg_dwell,
        prose=prose,
        prose_spans=tuple(spans),
    )


def compute_overview(
    session: Session,
    segments: Sequence[Segment],
    summaries: Sequence[SegmentSummary],
    corpus_size: int | None = None,
) -> SessionOverview:
    """Whole-session statistics plus superlative sentences.

    Superlative ties go to the earliest segment. The interaction rate of
    a zero-duration span is defined as 0.
    """
    if len(segments) != len(summaries):
        raise ValueError("summaries must align with segments")
    n_events = len(session.events)
    n_searches = sum(s.counts.get(EventKind.SEARCH.value, 0) for s in summaries)
    unique_docs = {
        ev.doc_id for ev in session.events
        if ev.kind is EventKind.DOC_OPEN and ev.doc_id
    }
    pct = len(unique_docs) / corpus_size if corpus_size else 0.0

    term_counts: Counter[str] = Counter()
    for ev in session.events:
        if ev.kind is EventKind.SEARCH and ev.text:
            term_counts.update(tokenize(ev.text))
    top_terms = tuple(
        t for t, _ in sorted(term_counts.items(), key=lambda kv: (-kv[1], kv[0]))
    )[:TOP_SEARCH_TERMS]

    duration = session.duration_ms
    rate = n_events / (duration / 60_000) if duration > 0 else 0.0

    def rate_of(i: int) -> float:
        d = summaries[i].duration_ms
        n = sum(summaries[i].counts.values())
        return n / (d / 60_000) if d > 0 else 0.0

    superlatives: dict[str, int] = {}
    if summaries:
        idx = range(len(summaries))
        superlatives = {
            "longest_duration": min(idx, key=lambda i: (-summaries[i].duration_ms, i)),
            "most_searches": min(
                idx, key=lambda i: (-summaries[i].counts.get(EventKind.SEARCH.value, 0), i)
            ),
            "most_documents": min(
                idx, key=lambda i: (-summaries[i].counts.get(EventKind.DOC_OPEN.value, 0), i)
            ),
            "busiest_rate": min(idx, key=lambda i: (-rate_of(i), i)),
        }
        superlatives = {
            label: summaries[i].segment_index for label, i in superlatives.items()
        }

    n_keywords = len({t for s in summaries for t, _ in s.keywords})
    slots: dict[str, object] = {
        "n_events": n_events,
        "duration_label": humanize_duration(duration),
        "rate_label": f"{rate:.1f}",
        "n_searches": n_searches,
        "top_search_terms": list(top_terms),
        "n_docs_unique": len(unique_docs),
        "pct_reviewed_label": f"{pct:.1%}" if corpus_size else None,
        "n_keywords": n_keywords,
        "has_segments": bool(summaries),
    }
    links: dict[str, str] = {}
    for label, seg_idx in superlatives.items():
        slots[f"{label}_label"] = f"#{seg_idx + 1}"
        links[f"{label}_label"] = f"segment:{seg_idx}"

    sentences: list[RenderedSentence] = []
    for line in _template("overview.tmpl").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        text, spans = render_template(line, slots, links)
        if text:
            sentences.append(RenderedSentence(text, tuple(spans)))

    return SessionOverview(
        n_events=n_events,
        n_searches=n_searches,
        n_docs_opened_unique=len(unique_docs),
        pct_corpus_reviewed=pct,
        top_search_terms=top_terms,
        avg_interaction_rate=rate,
        superlatives=superlatives,
        sentences=tuple(sentences),
    )


def keyword_link_index(summaries: Sequence[SegmentSummary]) -> dict[str, list[int]]:
    """Invert keyword lists: term -> segment indices whose cards carry it."""
    index: dict[str, list[int]] = {}
    for summary in summaries:
        for term, _ in summary.keywords:
            index.setdefault(term, []).append(summary.segment_index)
    return {t: index[t] for t in sorted(index)}
