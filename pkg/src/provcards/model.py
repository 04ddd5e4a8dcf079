"""Canonical data model for analysis sessions, documents, and interaction events.

Everything here is immutable after construction and safe to share across
threads read-only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping


class EventKind(str, Enum):
    SEARCH = "Search"
    DOC_OPEN = "DocOpen"
    HIGHLIGHT = "Highlight"
    NOTE = "Note"
    AUDIO_PLAY = "AudioPlay"
    OTHER = "Other"


@dataclass(frozen=True)
class Document:
    """One corpus document. ``body`` may be empty (title-only records allowed)."""

    id: str
    title: str = ""
    body: str = ""

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("document id must be non-empty")

    @property
    def full_text(self) -> str:
        """Title concatenated with body; the text documents are vectorized from."""
        if self.title and self.body:
            return self.title + "\n" + self.body
        return self.title or self.body


@dataclass(frozen=True)
class InteractionEvent:
    """One timestamped user action.

    ``text`` carries the query string for Search, the selected text for
    Highlight, and the note body for Note. ``meta`` is a flat string map for
    adapter-specific extras (e.g. result counts from query-metadata logs).
    """

    seq: int
    timestamp: int
    kind: EventKind
    doc_id: str | None = None
    text: str | None = None
    meta: Mapping[str, str] | None = None

    def __post_init__(self) -> None:
        if self.kind is EventKind.SEARCH and not self.text:
            raise ValueError(f"Search event (seq {self.seq}) must carry query text")
        if self.kind is EventKind.DOC_OPEN and not self.doc_id:
            raise ValueError(f"DocOpen event (seq {self.seq}) must carry doc_id")


@dataclass(frozen=True)
class Session:
    """An ordered interaction log for one analyst session."""

    id: str
    events: tuple[InteractionEvent, ...] = ()
    analyst: str | None = None
    corpus_ref: str | None = None

    def __post_init__(self) -> None:
        prev_seq: int | None = None
        prev_ts: int | None = None
        for ev in self.events:
            if prev_seq is not None and ev.seq <= prev_seq:
                raise ValueError(f"event seq {ev.seq} not strictly increasing")
            if prev_ts is not None and ev.timestamp < prev_ts:
                raise ValueError(f"event seq {ev.seq} regresses in time")
            prev_seq, prev_ts = ev.seq, ev.timestamp

    @property
    def duration_ms(self) -> int:
        if not self.events:
            return 0
        return self.events[-1].timestamp - self.events[0].timestamp


@dataclass(frozen=True)
class QueryRecord:
    """Degraded-mode record: a logged query with metadata but no corpus link."""

    query: str
    result_count: int
    timestamp: int
    requester: str
    justification: str | None = None

    def __post_init__(self) -> None:
        if not self.query:
            raise ValueError("query must be non-empty")
        if self.result_count < 0:
            raise ValueError("result_count must be non-negative")

    def to_event(self, seq: int) -> InteractionEvent:
        """Lossless mapping onto a Search event; metadata survives in ``meta``."""
        meta = {"result_count": str(self.result_count), "requester": self.requester}
        if self.justification is not None:
            meta["justification"] = self.justification
        return InteractionEvent(
            seq=seq,
            timestamp=self.timestamp,
            kind=EventKind.SEARCH,
            text=self.query,
            meta=meta,
        )


def event_to_dict(ev: InteractionEvent) -> dict:
    """Canonical wire shape for one event (JSONL line payload)."""
    out: dict = {"seq": ev.seq, "ts": ev.timestamp, "kind": ev.kind.value}
    if ev.doc_id is not None:
        out["doc_id"] = ev.doc_id
    if ev.text is not None:
        out["text"] = ev.text
    if ev.meta:
        out["meta"] = dict(ev.meta)
    return out


def session_to_jsonl(session: Session) -> str:
    """Serialize a session to canonical JSON Lines, one event per line."""
    lines = [json.dumps(event_to_dict(ev), ensure_ascii=False) for ev in session.events]
    return "\n".join(lines) + ("\n" if lines else "")


def document_to_dict(doc: Document) -> dict:
    return {"id": doc.id, "title": doc.title, "body": doc.body}


def corpus_to_jsonl(docs: Iterable[Document]) -> str:
    lines = [json.dumps(document_to_dict(d), ensure_ascii=False) for d in docs]
    return "\n".join(lines) + ("\n" if lines else "")
