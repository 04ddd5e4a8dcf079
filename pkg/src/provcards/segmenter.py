"""Vector sequences over session events and iterative binary segmentation."""

from __future__ import annotations

import bisect
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from .model import Document, EventKind, Session
from .textvec import TermVector, Vocabulary, build_vocabulary_from_texts, tfidf

_TEXT_KINDS = frozenset((EventKind.SEARCH, EventKind.HIGHLIGHT, EventKind.NOTE))
_DOC_KINDS = frozenset((EventKind.DOC_OPEN, EventKind.AUDIO_PLAY))


@dataclass(frozen=True)
class VectorSequence:
    """Vectorizable events of one session, in event order.

    Non-vectorizable events are excluded here but come back during segment
    assignment, which works on timestamps.
    """

    # (event_seq, vector) pairs, one per vectorizable event.
    items: tuple[tuple[int, TermVector], ...]
    # event_seq -> position in items.
    index_map: Mapping[int, int]
    # Timestamp (ms) of each item, non-decreasing.
    timestamps: tuple[int, ...]
    warnings: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.items)

    @cached_property
    def _prefix(self) -> tuple[np.ndarray, np.ndarray]:
        """Prefix sums S[k] = Σ_{i<k} x_i and sq[k] = Σ_{i<k} ‖x_i‖²."""
        terms = sorted({t for _, vec in self.items for t in vec.weights})
        col = {t: j for j, t in enumerate(terms)}
        x = np.zeros((len(self.items), len(terms)))
        for i, (_, vec) in enumerate(self.items):
            for t, w in vec.weights.items():
                x[i, col[t]] = w
        s = np.zeros((len(self.items) + 1, len(terms)))
        np.cumsum(x, axis=0, out=s[1:])
        sq = np.zeros(len(self.items) + 1)
        np.cumsum(np.einsum("ij,ij->i", x, x), out=sq[1:])
        return s, sq


@dataclass(frozen=True)
class SegmentationParams:
    """Knobs for binary segmentation; defaults target ~11 segments."""

    max_segments: int = 11
    min_gain_ratio: float = 1e-3
    min_segment_len: int = 3

    def __post_init__(self) -> None:
        if self.max_segments < 1:
            raise ValueError("max_segments must be at least 1")
        if self.min_gain_ratio < 0:
            raise ValueError("min_gain_ratio must be non-negative")
        if self.min_segment_len < 1:
            raise ValueError("min_segment_len must be at least 1")


@dataclass(frozen=True)
class Segment:
    """Half-open run [start, end) of vector positions with its time bounds."""

    start: int
    end: int
    t_start: int
    t_end: int
    # Mean of member vectors; deliberately not re-normalized.
    centroid: TermVector
    # Filled by assign_all_events: every session event (vectorizable or not)
    # whose timestamp lands in this segment.
    member_event_seqs: tuple[int, ...] = ()


def vectorize_session(
    corpus_vocab: Vocabulary | None,
    session: Session,
    docs: Sequence[Document] | Mapping[str, Document] | None = None,
) -> VectorSequence:
    """Replace each vectorizable event with a TF-IDF vector.

    With a corpus: document visits (DocOpen, AudioPlay with a doc_id) take
    the vector of the referenced document body; Search/Highlight/Note take
    the vector of their own text. Unresolvable doc references become
    warnings, not errors. Without a corpus (degraded mode) the vocabulary
    is built from event texts alone and only text-bearing events vectorize.
    """
    items: list[tuple[int, TermVector]] = []
    timestamps: list[int] = []
    warnings: list[str] = []

    if corpus_vocab is None:
        texted = [ev for ev in session.events if ev.kind in _TEXT_KINDS and ev.text]
        warnings.append(
            "no corpus available; segmentation used interaction text only"
        )
        if not texted:
            warnings.append("no text-bearing events to vectorize")
            return VectorSequence((), {}, (), tuple(warnings))
        vocab = build_vocabulary_from_texts([ev.text for ev in texted if ev.text])
        for ev in texted:
            items.append((ev.seq, tfidf(vocab, ev.text or "")))
            timestamps.append(ev.timestamp)
    else:
        if docs is None:
            raise ValueError("docs are required when corpus_vocab is given")
        doc_map = docs if isinstance(docs, Mapping) else {d.id: d for d in docs}
        for ev in session.events:
            if ev.kind in _TEXT_KINDS and ev.text:
                vec = tfidf(corpus_vocab, ev.text)
            elif ev.kind in _DOC_KINDS and ev.doc_id:
                doc = doc_map.get(ev.doc_id)
                if doc is None:
                    warnings.append(
                        f"event {ev.seq}: unknown document {ev.doc_id!r}"
                    )
                    continue
                vec = tfidf(corpus_vocab, doc.full_text)
            else:
                continue
            items.append((ev.seq, vec))
            timestamps.append(ev.timestamp)

    index_map = {seq: pos for pos, (seq, _) in enumerate(items)}
    return VectorSequence(tuple(items), index_map, tuple(timestamps), tuple(warnings))


def cost(seq: VectorSequence, a: int, b: int) -> float:
    """Within-range scatter Σ_{i∈[a,b)} ‖x_i − μ‖² around the range mean."""
    if not 0 <= a < b <= len(seq):
        raise ValueError(f"invalid range [{a}, {b}) for {len(seq)} vectors")
    s, sq = seq._prefix
    diff = s[b] - s[a]
    val = (sq[b] - sq[a]) - float(diff @ diff) / (b - a)
    # Scatter is non-negative by construction; clamp float residue.
    return max(0.0, val)


def _best_split(seq: VectorSequence, a: int, b: int, min_len: int) -> tuple[float, int] | None:
    """Highest-gain admissible split of [a, b), earliest index on ties."""
    if b - a < 2 * min_len:
        return None
    s, sq = seq._prefix
    parent = cost(seq, a, b)
    ms = np.arange(a + min_len, b - min_len + 1)
    dl = s[ms] - s[a]
    dr = s[b] - s[ms]
    cl = (sq[ms] - sq[a]) - np.einsum("ij,ij->i", dl, dl) / (ms - a)
    cr = (sq[b] - sq[ms]) - np.einsum("ij,ij->i", dr, dr) / (b - ms)
    gains = parent - cl - cr
    k = int(np.argmax(gains))
    return float(gains[k]), int(ms[k])


def _centroid(items: tuple[tuple[int, TermVector], ...], a: int, b: int) -> TermVector:
    # Summed per term as plain dicts so terms absent from every member stay
    # exactly absent (no float residue from vectorized prefix differences).
    acc: dict[str, float] = {}
    for _, vec in items[a:b]:
        for t, w in vec.weights.items():
            acc[t] = acc.get(t, 0.0) + w
    n = b - a
    return TermVector.from_weights({t: w / n for t, w in acc.items()})


def binary_segmentation(
    seq: VectorSequence,
    params: SegmentationParams | None = None,
) -> list[Segment]:
    """Split the sequence greedily at the globally best change points.

    Each iteration scans every current segment for its best admissible
    split and applies the one with the largest gain in parent cost minus
    child costs. Stops at max_segments, or when the best gain drops below
    min_gain_ratio times the whole-sequence cost. Zero-gain splits are
    never taken, so flat sequences stay whole even at threshold zero.
    """
    if params is None:
        params = SegmentationParams()
    n = len(seq)
    if n == 0:
        return []

    bounds: list[tuple[int, int]] = [(0, n)]
    if params.max_segments > 1 and n >= 2 * params.min_segment_len:
        threshold = params.min_gain_ratio * cost(seq, 0, n)
        candidates = {(0, n): _best_split(seq, 0, n, params.min_segment_len)}
        while len(bounds) < params.max_segments:
            best: tuple[float, int, tuple[int, int]] | None = None
            for seg in sorted(bounds):
                cand = candidates[seg]
                if cand is None:
                    continue
                gain, m = cand
                if best is None or gain > best[0]:
                    best = (gain, m, seg)
            if best is None:
                break
            gain, m, (a, b) = best
            if gain <= 0 or gain < threshold:
                break
            bounds.remove((a, b))
            del candidates[(a, b)]
            for child in ((a, m), (m, b)):
                bounds.append(child)
                candidates[child] = _best_split(seq, *child, params.min_segment_len)

    segments = []
    for a, b in sorted(bounds):
        segments.append(Segment(
            start=a,
            end=b,
            t_start=seq.timestamps[a],
            t_end=seq.timestamps[b - 1],
            centroid=_centroid(seq.items, a, b),
        ))
    return segments


def assign_all_events(session: Session, segments: Sequence[Segment]) -> list[Segment]:
    """Give every session event to a segment by timestamp.

    An event goes to the first segment whose t_end is at or past its
    timestamp, so boundary ties favor the earlier segment, events in
    gaps roll into the segment they led into, and trailing events land
    in the last segment.
    """
    if not segments:
        raise ValueError("cannot assign events without segments")
    ends = [seg.t_end for seg in segments]
    members: list[list[int]] = [[] for _ in segments]
    for ev in session.events:
        i = bisect.bisect_left(ends, ev.timestamp)
        if i == len(segments):
            i -= 1
        members[i].append(ev.seq)
    return [
        replace(seg, member_event_seqs=tuple(m))
        for seg, m in zip(segments, members)
    ]
