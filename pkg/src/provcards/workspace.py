"""Workspace loading and the end-to-end summary pipeline."""

from __future__ import annotations

import threading
from dataclasses import asdict, dataclass
from pathlib import Path

from .entities import EntityExtractor, HeuristicEntityExtractor
from .ingest import load_corpus, parse_log
from .model import Document, Session
from .segmenter import (
    Segment,
    SegmentationParams,
    assign_all_events,
    binary_segmentation,
    vectorize_session,
)
from .summarize import (
    RenderedSentence,
    SegmentSummary,
    SessionOverview,
    compute_overview,
    keyword_link_index,
    summarize_segment,
)
from .textvec import Vocabulary, build_vocabulary

CORPUS_FILE = "corpus.jsonl"
CORPUS_DIR = "corpus"
SESSIONS_DIR = "sessions"


@dataclass(frozen=True)
class SummaryResponse:
    """Wire shape of one summarized session; see to_dict for field names."""

    session_id: str
    params: SegmentationParams
    overview: SessionOverview
    cards: tuple[SegmentSummary, ...]
    segments: tuple[Segment, ...]
    link_index: dict[str, list[int]]
    warnings: tuple[str, ...]

    def to_dict(self) -> dict[str, object]:
        cards = []
        for summary, segment in zip(self.cards, self.segments):
            card = asdict(summary)
            card["prose_spans"] = [asdict(s) for s in summary.prose_spans]
            card["start"] = segment.start
            card["end"] = segment.end
            card["t_start"] = segment.t_start
            card["t_end"] = segment.t_end
            cards.append(card)
        overview = asdict(self.overview)
        overview["sentences"] = [
            {"text": s.text, "spans": [asdict(sp) for sp in s.spans]}
            for s in self.overview.sentences
        ]
        return {
            "session_id": self.session_id,
            "params": asdict(self.params),
            "overview": overview,
            "cards": cards,
            "link_index": self.link_index,
            "warnings": list(self.warnings),
        }


class Workspace:
    """A corpus (possibly absent) plus sessions, loaded from a directory.

    Layout: corpus.jsonl or a corpus/ directory of .txt files, and
    sessions/<id>.jsonl with one canonical event per line. Everything is
    immutable after load; pipeline results are cached per (session, params).
    """

    def __init__(
        self,
        corpus: list[Document] | None,
        sessions: dict[str, Session],
        extractor: EntityExtractor | None = None,
    ):
        self.corpus = corpus
        self.sessions = sessions
        self.extractor: EntityExtractor = extractor or HeuristicEntityExtractor()
        self._doc_map = {d.id: d for d in corpus} if corpus else None
        self._vocab: Vocabulary | None = None
        self._cache: dict[tuple[str, SegmentationParams], SummaryResponse] = {}
        self._lock = threading.Lock()

    @classmethod
    def load(cls, root: str | Path) -> "Workspace":
        root = Path(root)
        if not root.is_dir():
            raise FileNotFoundError(f"workspace directory not found: {root}")
        corpus = None
        if (root / CORPUS_FILE).exists():
            corpus = load_corpus(root / CORPUS_FILE)
        elif (root / CORPUS_DIR).is_dir():
            corpus = load_corpus(root / CORPUS_DIR)
        sessions: dict[str, Session] = {}
        sess_dir = root / SESSIONS_DIR
        if sess_dir.is_dir():
            for path in sorted(sess_dir.glob("*.jsonl")):
                with open(path, "rb") as fh:
                    sessions[path.stem] = parse_log(fh, "canonical_jsonl", session_id=path.stem)
        return cls(corpus, sessions)

    @property
    def degraded(self) -> bool:
        return self.corpus is None

    def vocabulary(self) -> Vocabulary | None:
        if self.corpus is None:
            return None
        with self._lock:
            if self._vocab is None:
                self._vocab = build_vocabulary(self.corpus)
            return self._vocab

    def run_pipeline(
        self,
        session_id: str,
        params: SegmentationParams | None = None,
    ) -> SummaryResponse:
        """Segment and summarize one session; cached per (session, params)."""
        if params is None:
            params = SegmentationParams()
        if session_id not in self.sessions:
            raise KeyError(f"unknown session {session_id!r}")
        key = (session_id, params)
        with self._lock:
            cached = self._cache.get(key)
        if cached is not None:
            return cached

        session = self.sessions[session_id]
        warnings: list[str] = []
        seq = vectorize_session(self.vocabulary(), session, self._doc_map)
        warnings.extend(seq.warnings)

        segments: list[Segment] = []
        summaries: list[SegmentSummary] = []
        if len(seq) > 0:
            segments = assign_all_events(session, binary_segmentation(seq, params))
            summaries = [
                summarize_segment(
                    session, seg, seg.centroid, self.extractor,
                    docs=self._doc_map, index=i,
                )
                for i, seg in enumerate(segments)
            ]
        else:
            warnings.append("session has no vectorizable events; no segments produced")

        overview = compute_overview(
            session, segments, summaries,
            corpus_size=len(self.corpus) if self.corpus else None,
        )
        response = SummaryResponse(
            session_id=session_id,
            params=params,
            overview=overview,
            cards=tuple(summaries),
            segments=tuple(segments),
            link_index=keyword_link_index(summaries),
            warnings=tuple(warnings),
        )
        with self._lock:
            self._cache[key] = response
        return response


def run_pipeline(
    workspace: Workspace,
    session_id: str,
    params: SegmentationParams | None = None,
) -> SummaryResponse:
    """Module-level alias for Workspace.run_pipeline."""
    return workspace.run_pipeline(session_id, params)
