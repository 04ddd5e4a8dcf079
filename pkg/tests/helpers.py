"""Shared builders and fixture paths for the test suite."""

from __future__ import annotations

from pathlib import Path

from provcards.model import EventKind, InteractionEvent, Session
from provcards.segmenter import VectorSequence
from provcards.textvec import TermVector

FIXTURES = Path(__file__).parent / "fixtures"
DESK_WORKSPACE = FIXTURES / "desk"
HETERO_WORKSPACE = FIXTURES / "hetero"
DESK_SESSION = "synthetic-7"
HETERO_SESSION = "synthetic-3"


def make_vecseq(
    vectors: list[dict[str, float]],
    timestamps: list[int] | None = None,
    start_seq: int = 1,
) -> VectorSequence:
    """A VectorSequence straight from weight dicts, for segmenter tests."""
    if timestamps is None:
        timestamps = [1_000 * i for i in range(len(vectors))]
    items = tuple(
        (start_seq + i, TermVector.from_weights(v)) for i, v in enumerate(vectors)
    )
    index_map = {seq: pos for pos, (seq, _) in enumerate(items)}
    return VectorSequence(items, index_map, tuple(timestamps))


def ev(
    seq: int,
    ts: int,
    kind: EventKind,
    doc_id: str | None = None,
    text: str | None = None,
    meta: dict | None = None,
) -> InteractionEvent:
    return InteractionEvent(
        seq=seq, timestamp=ts, kind=kind, doc_id=doc_id, text=text, meta=meta
    )


def make_session(events: list[InteractionEvent], session_id: str = "s1") -> Session:
    return Session(id=session_id, events=tuple(events))
