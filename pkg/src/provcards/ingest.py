"""Log ingestion adapters and corpus loading.

Four log families are supported:

* ``canonical_jsonl`` - the native schema, one event per line with fields
  ``seq``, ``ts`` (epoch ms), ``kind``, and optional ``doc_id``/``text``/``meta``.
* ``vast_tool`` - document-explorer logs (searches, document opens, text
  highlights, notes) with tool-specific field and kind spellings.
* ``conversation_tool`` - audio-transcript analysis logs (searches with
  filters, transcript opens, audio playback).
* ``query_metadata`` - compliance query logs carrying only the query string,
  result count, timestamp, and requester; these become Search events with the
  extra metadata retained.

Unknown event kinds survive as ``Other`` with their payload preserved, so
downstream counts stay honest.
"""

from __future__ import annotations

import json
from datetime import datetime, timezone
from pathlib import Path
from typing import IO, Iterable, Union

from .model import Document, EventKind, InteractionEvent, QueryRecord, Session

LOG_FORMATS = ("canonical_jsonl", "vast_tool", "conversation_tool", "query_metadata")


class LogParseError(ValueError):
    """Malformed log input; carries the offending line number when known."""

    def __init__(self, reason: str, line_no: int | None = None, seq: int | None = None):
        loc = f" (line {line_no})" if line_no is not None else ""
        super().__init__(f"{reason}{loc}")
        self.reason = reason
        self.line_no = line_no
        self.seq = seq


class CorpusError(ValueError):
    pass


RawInput = Union[bytes, str, IO]


def _as_text(raw: RawInput) -> str:
    if isinstance(raw, bytes):
        return raw.decode("utf-8")
    if isinstance(raw, str):
        return raw
    data = raw.read()
    if isinstance(data, bytes):
        return data.decode("utf-8")
    return data


def _parse_timestamp(value, line_no: int) -> int:
    """Epoch milliseconds from an epoch number or an ISO-8601 string.

    Numeric values below 1e11 are taken as epoch seconds and scaled up.
    """
    if isinstance(value, bool):
        raise LogParseError("timestamp must be a number or ISO-8601 string", line_no)
    if isinstance(value, (int, float)):
        ms = float(value)
        if abs(ms) < 1e11:
            ms *= 1000.0
        return int(round(ms))
    if isinstance(value, str):
        try:
            dt = datetime.fromisoformat(value.replace("Z", "+00:00"))
        except ValueError as exc:
            raise LogParseError(f"unparseable timestamp {value!r}", line_no) from exc
        if dt.tzinfo is None:
            dt = dt.replace(tzinfo=timezone.utc)
        return int(round(dt.timestamp() * 1000))
    raise LogParseError("timestamp must be a number or ISO-8601 string", line_no)


def _json_lines(text: str) -> Iterable[tuple[int, dict]]:
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise LogParseError(f"invalid JSON: {exc.msg}", line_no) from exc
        if not isinstance(record, dict):
            raise LogParseError("expected a JSON object", line_no)
        yield line_no, record


def _flat_meta(record: dict, skip: set[str]) -> dict[str, str] | None:
    meta = {k: str(v) for k, v in record.items() if k not in skip and v is not None}
    return meta or None


_KIND_ALIASES = {
    "search": EventKind.SEARCH,
    "query": EventKind.SEARCH,
    "docopen": EventKind.DOC_OPEN,
    "opendocument": EventKind.DOC_OPEN,
    "documentopen": EventKind.DOC_OPEN,
    "opendoc": EventKind.DOC_OPEN,
    "open": EventKind.DOC_OPEN,
    "read": EventKind.DOC_OPEN,
    "readdocument": EventKind.DOC_OPEN,
    "viewdocument": EventKind.DOC_OPEN,
    "highlight": EventKind.HIGHLIGHT,
    "textselection": EventKind.HIGHLIGHT,
    "note": EventKind.NOTE,
    "addnote": EventKind.NOTE,
    "annotation": EventKind.NOTE,
    "audioplay": EventKind.AUDIO_PLAY,
    "playaudio": EventKind.AUDIO_PLAY,
    "play": EventKind.AUDIO_PLAY,
}


def _alias_kind(raw_kind: str) -> EventKind | None:
    key = "".join(ch for ch in raw_kind.lower() if ch.isalnum())
    return _KIND_ALIASES.get(key)


def _first(record: dict, *keys):
    for key in keys:
        if key in record and record[key] is not None:
            return record[key]
    return None


def _parse_canonical(text: str) -> list[InteractionEvent]:
    events = []
    for line_no, rec in _json_lines(text):
        try:
            seq = int(rec["seq"])
            ts = int(rec["ts"])
        except (KeyError, TypeError, ValueError):
            raise LogParseError("missing or invalid 'seq'/'ts'", line_no) from None
        kind_raw = rec.get("kind")
        if not isinstance(kind_raw, str):
            raise LogParseError("missing 'kind'", line_no)
        meta = rec.get("meta")
        if meta is not None and not isinstance(meta, dict):
            raise LogParseError("'meta' must be a flat object", line_no)
        try:
            kind = EventKind(kind_raw)
        except ValueError:
            kind = EventKind.OTHER
            meta = dict(meta or {})
            meta["orig_kind"] = kind_raw
        try:
            events.append(
                InteractionEvent(
                    seq=seq,
                    timestamp=ts,
                    kind=kind,
                    doc_id=rec.get("doc_id"),
                    text=rec.get("text"),
                    meta={k: str(v) for k, v in meta.items()} if meta else None,
                )
            )
        except ValueError as exc:
            raise LogParseError(str(exc), line_no) from None
    return events


def _parse_vast(text: str) -> list[InteractionEvent]:
    events = []
    for line_no, rec in _json_lines(text):
        raw_kind = _first(rec, "interactionType", "InteractionType", "type", "action")
        if not isinstance(raw_kind, str):
            raise LogParseError("missing interaction type", line_no)
        ts_raw = _first(rec, "timestamp", "time", "Timestamp", "ts")
        if ts_raw is None:
            raise LogParseError("missing timestamp", line_no)
        ts = _parse_timestamp(ts_raw, line_no)
        payload = _first(rec, "text", "typedText", "query", "value", "content")
        doc_id = _first(rec, "docId", "documentId", "doc_id", "document")
        kind = _alias_kind(raw_kind)
        meta = _flat_meta(
            rec,
            skip={
                "interactionType", "InteractionType", "type", "action",
                "timestamp", "time", "Timestamp", "ts",
                "text", "typedText", "query", "value", "content",
                "docId", "documentId", "doc_id", "document",
            },
        )
        if kind is None:
            kind = EventKind.OTHER
            meta = dict(meta or {})
            meta["orig_kind"] = raw_kind
        seq = len(events) + 1
        try:
            events.append(
                InteractionEvent(
                    seq=seq,
                    timestamp=ts,
                    kind=kind,
                    doc_id=str(doc_id) if doc_id is not None else None,
                    text=str(payload) if payload is not None else None,
                    meta=meta,
                )
            )
        except ValueError as exc:
            raise LogParseError(str(exc), line_no, seq=seq) from None
    return events


def _parse_conversation(text: str) -> list[InteractionEvent]:
    events = []
    for line_no, rec in _json_lines(text):
        raw_kind = _first(rec, "action", "event", "type")
        if not isinstance(raw_kind, str):
            raise LogParseError("missing 'action'", line_no)
        ts_raw = _first(rec, "timestamp", "time", "ts")
        if ts_raw is None:
            raise LogParseError("missing timestamp", line_no)
        ts = _parse_timestamp(ts_raw, line_no)
        doc_id = _first(rec, "transcript_id", "tape_id", "recording_id", "doc_id")
        payload = _first(rec, "query", "text", "note")
        kind = _alias_kind(raw_kind)
        if kind is None and "transcript" in raw_kind.lower():
            kind = EventKind.DOC_OPEN
        if kind is None and "audio" in raw_kind.lower():
            kind = EventKind.AUDIO_PLAY
        meta = _flat_meta(
            rec,
            skip={
                "action", "event", "type", "timestamp", "time", "ts",
                "transcript_id", "tape_id", "recording_id", "doc_id",
                "query", "text", "note",
            },
        )
        if kind is None:
            kind = EventKind.OTHER
            meta = dict(meta or {})
            meta["orig_kind"] = raw_kind
        seq = len(events) + 1
        try:
            events.append(
                InteractionEvent(
                    seq=seq,
                    timestamp=ts,
                    kind=kind,
                    doc_id=str(doc_id) if doc_id is not None else None,
                    text=str(payload) if payload is not None else None,
                    meta=meta,
                )
            )
        except ValueError as exc:
            raise LogParseError(str(exc), line_no, seq=seq) from None
    return events


def _parse_query_metadata(text: str) -> list[InteractionEvent]:
    events = []
    for line_no, rec in _json_lines(text):
        query = _first(rec, "query", "query_string", "search")
        if not isinstance(query, str) or not query:
            raise LogParseError("missing or empty 'query'", line_no)
        ts_raw = _first(rec, "timestamp", "time", "date", "ts")
        if ts_raw is None:
            raise LogParseError("missing timestamp", line_no)
        try:
            result_count = int(_first(rec, "result_count", "results", "n_results") or 0)
        except (TypeError, ValueError):
            raise LogParseError("invalid result count", line_no) from None
        requester = str(_first(rec, "requester", "designator", "user") or "unknown")
        justification = _first(rec, "justification", "reason")
        try:
            record = QueryRecord(
                query=query,
                result_count=result_count,
                timestamp=_parse_timestamp(ts_raw, line_no),
                requester=requester,
                justification=str(justification) if justification is not None else None,
            )
        except ValueError as exc:
            raise LogParseError(str(exc), line_no) from None
        seq = len(events) + 1
        event = record.to_event(seq)
        extra = _flat_meta(
            rec,
            skip={
                "query", "query_string", "search", "timestamp", "time", "date", "ts",
                "result_count", "results", "n_results", "requester", "designator",
                "user", "justification", "reason",
            },
        )
        if extra:
            merged = dict(event.meta or {})
            merged.update(extra)
            event = InteractionEvent(
                seq=event.seq, timestamp=event.timestamp, kind=event.kind,
                doc_id=event.doc_id, text=event.text, meta=merged,
            )
        events.append(event)
    return events


_PARSERS = {
    "canonical_jsonl": _parse_canonical,
    "vast_tool": _parse_vast,
    "conversation_tool": _parse_conversation,
    "query_metadata": _parse_query_metadata,
}


def _check_order(events: list[InteractionEvent], tolerance_ms: int) -> list[InteractionEvent]:
    """Enforce non-decreasing timestamps.

    Regressions beyond ``tolerance_ms`` are errors; smaller ones (clock skew)
    are clamped up to the previous timestamp so session invariants hold.
    """
    out: list[InteractionEvent] = []
    prev_ts: int | None = None
    for ev in events:
        ts = ev.timestamp
        if prev_ts is not None and ts < prev_ts:
            if prev_ts - ts > tolerance_ms:
                raise LogParseError(
                    f"timestamp regression at seq {ev.seq}: {ts} < {prev_ts}",
                    seq=ev.seq,
                )
            ev = InteractionEvent(
                seq=ev.seq, timestamp=prev_ts, kind=ev.kind,
                doc_id=ev.doc_id, text=ev.text, meta=ev.meta,
            )
            ts = prev_ts
        out.append(ev)
        prev_ts = ts
    return out


def parse_log(
    raw: RawInput,
    format: str,
    session_id: str = "session",
    analyst: str | None = None,
    corpus_ref: str | None = None,
    tolerance_ms: int = 0,
) -> Session:
    """Parse a raw log in the named format into a canonical Session."""
    if format not in _PARSERS:
        raise LogParseError(f"unknown log format {format!r} (supported: {', '.join(LOG_FORMATS)})")
    events = _PARSERS[format](_as_text(raw))
    events = _check_order(events, tolerance_ms)
    try:
        return Session(id=session_id, events=tuple(events), analyst=analyst, corpus_ref=corpus_ref)
    except ValueError as exc:
        raise LogParseError(str(exc)) from None


def load_corpus(path: str | Path) -> list[Document]:
    """Load documents from a JSONL file or a directory of .txt files.

    In a directory, the filename stem is the document id and the first line
    of the file is its title. JSONL records need ``id`` plus optional
    ``title``/``body``. Duplicate ids are an error either way.
    """
    path = Path(path)
    if not path.exists():
        raise CorpusError(f"corpus path does not exist: {path}")
    docs: list[Document] = []
    seen: set[str] = set()

    def add(doc: Document, where: str) -> None:
        if doc.id in seen:
            raise CorpusError(f"duplicate document id {doc.id!r} ({where})")
        seen.add(doc.id)
        docs.append(doc)

    if path.is_dir():
        txt_files = sorted(p for p in path.iterdir() if p.suffix == ".txt")
        if not txt_files:
            raise CorpusError(f"no .txt files in directory {path}")
        for p in txt_files:
            try:
                content = p.read_text("utf-8")
            except OSError as exc:
                raise CorpusError(f"unreadable file {p}: {exc}") from exc
            first, _, rest = content.partition("\n")
            add(Document(id=p.stem, title=first.strip(), body=rest.strip()), str(p))
        return docs

    try:
        text = path.read_text("utf-8")
    except OSError as exc:
        raise CorpusError(f"unreadable file {path}: {exc}") from exc
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"invalid JSON on line {line_no}: {exc.msg}") from exc
        if not isinstance(rec, dict) or "id" not in rec:
            raise CorpusError(f"corpus record on line {line_no} needs an 'id'")
        add(
            Document(
                id=str(rec["id"]),
                title=str(rec.get("title", "")),
                body=str(rec.get("body", "")),
            ),
            f"line {line_no}",
        )
    if not docs:
        raise CorpusError(f"no documents in {path}")
    return docs
