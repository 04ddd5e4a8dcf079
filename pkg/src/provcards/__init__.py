"""Segmented summary cards for exploratory text-analysis sessions.

The pipeline: parse interaction logs into a canonical session, vectorize
text-bearing events with corpus TF-IDF, find change points by iterative
binary segmentation, then render one summary card per segment plus a
whole-session overview.
"""

from .entities import (
    EntityExtractor,
    EntityKind,
    EntityMention,
    HeuristicEntityExtractor,
    count_entities,
    extract_entities_heuristic,
)
from .export import export, render, to_html, to_json, to_text
from .ingest import CorpusError, LOG_FORMATS, LogParseError, load_corpus, parse_log
from .model import (
    Document,
    EventKind,
    InteractionEvent,
    QueryRecord,
    Session,
    corpus_to_jsonl,
    document_to_dict,
    event_to_dict,
    session_to_jsonl,
)
from .segmenter import (
    Segment,
    SegmentationParams,
    VectorSequence,
    assign_all_events,
    binary_segmentation,
    cost,
    vectorize_session,
)
from .service import create_app, serve
from .summarize import (
    RenderedSentence,
    SegmentSummary,
    SessionOverview,
    compute_overview,
    humanize_duration,
    keyword_link_index,
    segment_keywords,
    summarize_segment,
)
from .synth import SyntheticGroundTruth, generate_synthetic
from .templating import Span, TemplateError, render_template
from .textvec import (
    TermVector,
    Vocabulary,
    build_vocabulary,
    build_vocabulary_from_texts,
    stopwords,
    tfidf,
    tokenize,
)
from .workspace import SummaryResponse, Workspace, run_pipeline

__version__ = "0.1.0"

__all__ = [
    "CorpusError",
    "Document",
    "EntityExtractor",
    "EntityKind",
    "EntityMention",
    "EventKind",
    "HeuristicEntityExtractor",
    "InteractionEvent",
    "LOG_FORMATS",
    "LogParseError",
    "QueryRecord",
    "RenderedSentence",
    "Segment",
    "SegmentationParams",
    "SegmentSummary",
    "Session",
    "SessionOverview",
    "Span",
    "SummaryResponse",
    "SyntheticGroundTruth",
    "TemplateError",
    "TermVector",
    "VectorSequence",
    "Vocabulary",
    "Workspace",
    "assign_all_events",
    "binary_segmentation",
    "build_vocabulary",
    "build_vocabulary_from_texts",
    "compute_overview",
    "corpus_to_jsonl",
    "cost",
    "count_entities",
    "create_app",
    "document_to_dict",
    "event_to_dict",
    "export",
    "extract_entities_heuristic",
    "generate_synthetic",
    "humanize_duration",
    "keyword_link_index",
    "load_corpus",
    "parse_log",
    "render",
    "render_template",
    "run_pipeline",
    "segment_keywords",
    "serve",
    "session_to_jsonl",
    "stopwords",
    "summarize_segment",
    "tfidf",
    "to_html",
    "to_json",
    "to_text",
    "tokenize",
    "vectorize_session",
]
