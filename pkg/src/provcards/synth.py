"""Deterministic synthetic corpora and sessions with known phase boundaries."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .model import Document, EventKind, InteractionEvent, Session
from .textvec import _load_wordlist

# 2025-01-01T00:00:00Z; fixed so identical seeds give identical timestamps.
START_MS = 1_735_689_600_000

TERMS_PER_PHASE = 12

SURNAMES = (
    "Adler", "Barrett", "Calloway", "Donovan", "Ellington", "Fairbanks",
    "Graves", "Holloway", "Ingram", "Jennings", "Kessler", "Lockhart",
    "Mercer", "Navarro", "Osborne", "Prescott", "Quimby", "Rafferty",
    "Sutton", "Thorne", "Underwood", "Vance", "Whitaker", "Yates",
    "Zimmer", "Ashcroft", "Blackwood", "Crane", "Delgado", "Emerson",
    "Fenwick", "Garrity", "Hawthorne", "Irving", "Jacobsen", "Kirkland",
    "Lambert", "McAllister", "Northrup", "Ormond", "Pembroke", "Quinlan",
    "Redmond", "Sinclair", "Talmadge", "Urquhart", "Vasquez", "Wexler",
    "Yardley", "Ziegler",
)


@dataclass(frozen=True)
class SyntheticGroundTruth:
    """What the generator knows about the session it built."""

    n_phases: int
    # Index into the vectorizable-event sequence where each later phase
    # begins; empty when n_phases == 1.
    boundaries: tuple[int, ...]
    # seq of the first event of each phase, one entry per phase.
    phase_first_seqs: tuple[int, ...]
    phase_terms: tuple[tuple[str, ...], ...]
    people: tuple[tuple[str, ...], ...]
    places: tuple[tuple[str, ...], ...]


def _partition(rng: random.Random, total: int, parts: int, minimum: int) -> list[int]:
    """Split total into parts random shares, each at least minimum."""
    if total < parts * minimum:
        minimum = max(1, total // parts)
    free = total - parts * minimum
    weights = [rng.random() + 0.2 for _ in range(parts)]
    scale = sum(weights)
    counts = [minimum + int(free * w / scale) for w in weights]
    counts[-1] += total - sum(counts)
    return counts


def _pick_fresh(rng: random.Random, pool: tuple[str, ...], used: set[str]) -> str:
    """Pick an entry from pool whose lowercase tokens are all unused."""
    for _ in range(200):
        cand = rng.choice(pool)
        toks = [t.lower() for t in cand.split()]
        if all(t not in used for t in toks):
            used.update(toks)
            return cand
    raise RuntimeError("entity pool exhausted")


def _sentence(rng: random.Random, terms: tuple[str, ...]) -> str:
    picked = rng.sample(terms, rng.randint(3, 5))
    return " ".join(picked).capitalize() + "."


def _entity_sentence(rng: random.Random, people: tuple[str, ...], places: tuple[str, ...]) -> str:
    return f"{rng.choice(people)} was in {rng.choice(places)}."


def generate_synthetic(
    seed: int,
    n_docs: int = 120,
    n_events: int = 600,
    n_phases: int = 4,
) -> tuple[list[Document], Session, SyntheticGroundTruth]:
    """Build a corpus and session split into topic phases with known joins.

    Each phase owns a disjoint slice of the term pool and its own people
    and places, so every text-bearing event is unambiguous about which
    phase produced it and the true segmentation is computable.
    """
    if n_phases < 1:
        raise ValueError("n_phases must be at least 1")
    if n_events < n_phases:
        raise ValueError("n_events must be at least n_phases")
    rng = random.Random(seed)

    # Wordlists are sets; sort before any rng use so output is seed-stable.
    pool = sorted(_load_wordlist("wordpool.txt"))
    rng.shuffle(pool)
    phase_terms = tuple(
        tuple(pool[i * TERMS_PER_PHASE:(i + 1) * TERMS_PER_PHASE])
        for i in range(n_phases)
    )

    given = tuple(sorted(_load_wordlist("given_names.txt")))
    locations = tuple(sorted(l for l in _load_wordlist("locations.txt") if " " not in l))
    used: set[str] = {t for terms in phase_terms for t in terms}
    people = tuple(
        tuple(
            f"{_pick_fresh(rng, given, used)} {_pick_fresh(rng, SURNAMES, used)}"
            for _ in range(3)
        )
        for _ in range(n_phases)
    )
    places = tuple(
        tuple(_pick_fresh(rng, locations, used) for _ in range(2))
        for _ in range(n_phases)
    )

    doc_counts = _partition(rng, n_docs, n_phases, minimum=3)
    docs: list[Document] = []
    phase_doc_ids: list[list[str]] = []
    width = max(3, len(str(n_docs)))
    for p in range(n_phases):
        ids: list[str] = []
        for j in range(doc_counts[p]):
            doc_id = f"doc-{len(docs) + 1:0{width}d}"
            title = " ".join(t.capitalize() for t in rng.sample(phase_terms[p], 2))
            sentences = [_sentence(rng, phase_terms[p]) for _ in range(rng.randint(3, 6))]
            for _ in range(rng.randint(0, 2)):
                sentences.append(_entity_sentence(rng, people[p], places[p]))
            if j == 0:
                # Guarantee every phase term has df >= 1.
                sentences.append(" ".join(phase_terms[p]).capitalize() + ".")
            docs.append(Document(id=doc_id, title=title, body=" ".join(sentences)))
            ids.append(doc_id)
        phase_doc_ids.append(ids)

    event_counts = _partition(rng, n_events, n_phases, minimum=12)
    kinds = (
        EventKind.SEARCH, EventKind.DOC_OPEN, EventKind.HIGHLIGHT,
        EventKind.NOTE, EventKind.AUDIO_PLAY, EventKind.OTHER,
    )
    weights = (0.22, 0.34, 0.16, 0.12, 0.08, 0.08)

    events: list[InteractionEvent] = []
    boundaries: list[int] = []
    phase_first_seqs: list[int] = []
    ts = START_MS
    seq = 0
    vectorizable = 0
    rec_counter = 0
    for p in range(n_phases):
        if p > 0:
            boundaries.append(vectorizable)
            ts += rng.randint(60_000, 180_000)
        phase_first_seqs.append(seq + 1)
        for i in range(event_counts[p]):
            seq += 1
            ts += rng.randint(5_000, 25_000)
            # Anchor each phase with a document so the join is crisp.
            kind = EventKind.DOC_OPEN if i == 0 else rng.choices(kinds, weights)[0]
            doc_id = None
            text = None
            meta: dict[str, object] | None = None
            if kind is EventKind.SEARCH:
                text = " ".join(rng.sample(phase_terms[p], rng.randint(2, 3)))
                meta = {"result_count": rng.randint(0, 40)}
            elif kind is EventKind.DOC_OPEN:
                doc_id = rng.choice(phase_doc_ids[p])
                if rng.random() < 0.8:
                    meta = {"dwell_ms": rng.randint(10_000, 240_000)}
            elif kind is EventKind.HIGHLIGHT:
                doc_id = rng.choice(phase_doc_ids[p])
                # Always lead with topic terms; an entity-only passage is
                # near-orthogonal to its own phase and blurs the joins.
                text = _sentence(rng, phase_terms[p])
                if rng.random() < 0.3:
                    text += " " + _entity_sentence(rng, people[p], places[p])
            elif kind is EventKind.NOTE:
                text = _sentence(rng, phase_terms[p])
                if rng.random() < 0.4:
                    text += " " + _entity_sentence(rng, people[p], places[p])
            elif kind is EventKind.AUDIO_PLAY:
                rec_counter += 1
                meta = {
                    "recording_id": f"rec-{rec_counter:03d}",
                    "duration_ms": rng.randint(30_000, 600_000),
                }
            else:
                meta = {"action": rng.choice(("bookmark", "export", "scroll", "filter"))}
            if text is not None or kind is EventKind.DOC_OPEN:
                vectorizable += 1
            events.append(InteractionEvent(
                seq=seq, timestamp=ts, kind=kind, doc_id=doc_id, text=text, meta=meta,
            ))

    session = Session(
        id=f"synthetic-{seed}",
        events=tuple(events),
        analyst="analyst-1",
        corpus_ref="synthetic",
    )
    truth = SyntheticGroundTruth(
        n_phases=n_phases,
        boundaries=tuple(boundaries),
        phase_first_seqs=tuple(phase_first_seqs),
        phase_terms=phase_terms,
        people=people,
        places=places,
    )
    return docs, session, truth
