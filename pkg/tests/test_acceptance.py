"""Acceptance suite: nine checks, one printed PASS/FAIL line each.

Each check pins its tolerance as a module constant and validates the
pipeline against independently coded reference implementations, bundled
fixtures, or hand-counted ground truth.
"""

from __future__ import annotations

import json
import random
import shutil
import time

import pytest

from provcards.model import Document, EventKind
from provcards.segmenter import (
    SegmentationParams,
    binary_segmentation,
    vectorize_session,
)
from provcards.synth import generate_synthetic
from provcards.templating import TemplateError, render_template
from provcards.textvec import build_vocabulary, stopwords, tfidf, tokenize
from provcards.workspace import Workspace

from .helpers import (
    DESK_SESSION,
    DESK_WORKSPACE,
    HETERO_SESSION,
    HETERO_WORKSPACE,
    make_vecseq,
)
from .oracles import (
    oracle_first_split,
    oracle_first_split_fast,
    oracle_greedy_fast,
    oracle_greedy_segments,
    oracle_tfidf,
)

TFIDF_CORPORA = 1_000
TFIDF_TOLERANCE = 1e-9
TFIDF_TIME_BUDGET_S = 10.0
FIRST_SPLIT_SEQUENCES = 200
FIRST_SPLIT_MAX_N = 200
FIRST_SPLIT_TIME_BUDGET_S = 30.0
GREEDY_SEQUENCES = 100
GREEDY_MAX_N = 100
GREEDY_MAX_K = 6
RECOVERY_SEEDS = 100
RECOVERY_MIN_EXACT = 0.95
RECOVERY_MAX_OFF_BY = 1
DEFAULT_MAX_SEGMENTS = 11
DESK_TIME_BUDGET_S = 5.0
DESK_CORPUS_SIZE = 120
MIN_LEN = 3


@pytest.fixture
def report(capsys):
    """Print one always-visible verdict line for an acceptance criterion."""

    def _report(criterion: int, ok: bool, detail: str) -> None:
        verdict = "PASS" if ok else "FAIL"
        with capsys.disabled():
            print(f"[acceptance] criterion {criterion}: {verdict} - {detail}")

    return _report


def _random_sparse_vectors(
    rng: random.Random, n: int, dim: int
) -> list[dict[str, float]]:
    terms = [f"t{i}" for i in range(dim)]
    return [
        {
            t: round(rng.random(), 4)
            for t in rng.sample(terms, rng.randint(1, min(4, dim)))
        }
        for _ in range(n)
    ]


def test_criterion_1_tfidf_matches_brute_force(report):
    rng = random.Random(1001)
    stops = stopwords()
    universe = [f"term{i:02d}" for i in range(50)]
    worst = 0.0
    start = time.perf_counter()
    for _ in range(TFIDF_CORPORA):
        active = rng.sample(universe, rng.randint(2, 50))
        texts = [
            " ".join(rng.choices(active, k=rng.randint(1, 30)))
            for _ in range(rng.randint(1, 10))
        ]
        query = " ".join(rng.choices(active + ["zzunseen"], k=rng.randint(1, 15)))
        vocab = build_vocabulary(
            [Document(id=f"d{i}", body=t) for i, t in enumerate(texts)]
        )
        got = tfidf(vocab, query)
        want = oracle_tfidf(texts, query, stops)
        assert set(got.weights) == set(want)
        for term, weight in want.items():
            worst = max(worst, abs(got.get(term) - weight))
    elapsed = time.perf_counter() - start
    ok = worst <= TFIDF_TOLERANCE and elapsed < TFIDF_TIME_BUDGET_S
    report(
        1, ok,
        f"{TFIDF_CORPORA} corpora, max weight error {worst:.2e} "
        f"(tol {TFIDF_TOLERANCE}), {elapsed:.2f}s (budget {TFIDF_TIME_BUDGET_S}s)",
    )
    assert worst <= TFIDF_TOLERANCE
    assert elapsed < TFIDF_TIME_BUDGET_S


def test_criterion_2_first_split_is_exhaustive_argmax(report):
    rng = random.Random(2002)
    start = time.perf_counter()
    checked = 0
    for i in range(FIRST_SPLIT_SEQUENCES):
        n = rng.randint(4, FIRST_SPLIT_MAX_N)
        vecs = _random_sparse_vectors(rng, n, rng.randint(2, 12))
        seq = make_vecseq(vecs)
        segments = binary_segmentation(
            seq,
            SegmentationParams(
                max_segments=2, min_gain_ratio=0.0, min_segment_len=MIN_LEN
            ),
        )
        best = oracle_first_split_fast(vecs, MIN_LEN)
        if i % 20 == 0 and 2 * MIN_LEN <= n <= 60:
            # Anchor the running-sum oracle to the direct-definition one.
            slow = oracle_first_split(vecs, MIN_LEN)
            assert best is not None and slow is not None
            assert best[1] == slow[1]
            assert best[0] == pytest.approx(slow[0], abs=1e-9)
        if best is None or best[0] <= 0:
            assert len(segments) == 1, f"sequence {i}: expected no split"
        else:
            assert len(segments) == 2, f"sequence {i}: expected a split"
            assert segments[0].end == best[1], (
                f"sequence {i}: split {segments[0].end} != argmax {best[1]}"
            )
        checked += 1
    elapsed = time.perf_counter() - start
    ok = checked == FIRST_SPLIT_SEQUENCES and elapsed < FIRST_SPLIT_TIME_BUDGET_S
    report(
        2, ok,
        f"{checked} sequences (n <= {FIRST_SPLIT_MAX_N}) match exhaustive argmax, "
        f"{elapsed:.2f}s (budget {FIRST_SPLIT_TIME_BUDGET_S}s)",
    )
    assert ok


def test_criterion_3_greedy_trace_matches_recursive_oracle(report):
    rng = random.Random(3003)
    mismatches = 0
    for i in range(GREEDY_SEQUENCES):
        n = rng.randint(4, GREEDY_MAX_N)
        k = rng.randint(2, GREEDY_MAX_K)
        ratio = rng.choice((0.0, 1e-3, 0.02))
        vecs = _random_sparse_vectors(rng, n, rng.randint(2, 8))
        seq = make_vecseq(vecs)
        params = SegmentationParams(
            max_segments=k, min_gain_ratio=ratio, min_segment_len=MIN_LEN
        )
        got = [s.end for s in binary_segmentation(seq, params)[:-1]]
        want = oracle_greedy_fast(vecs, k, ratio, MIN_LEN)
        if i % 10 == 0 and n <= 40:
            # Anchor the fast oracle to the direct quadratic one.
            assert want == oracle_greedy_segments(vecs, k, ratio, MIN_LEN)
        if got != want:
            mismatches += 1
    ok = mismatches == 0
    report(
        3, ok,
        f"{GREEDY_SEQUENCES} sequences (n <= {GREEDY_MAX_N}, K <= {GREEDY_MAX_K}), "
        f"{mismatches} breakpoint-set mismatches",
    )
    assert ok


def test_criterion_4_synthetic_phase_recovery(report):
    exact = 0
    for seed in range(RECOVERY_SEEDS):
        sizes = random.Random(4004 + seed)
        n_phases = sizes.randint(3, 5)
        n_events = sizes.randint(300, 600)
        n_docs = sizes.randint(60, 120)
        docs, session, truth = generate_synthetic(
            seed, n_docs=n_docs, n_events=n_events, n_phases=n_phases
        )
        vocab = build_vocabulary(docs)
        seq = vectorize_session(vocab, session, docs)
        segments = binary_segmentation(
            seq, SegmentationParams(max_segments=n_phases)
        )
        got = [s.end for s in segments[:-1]]
        want = list(truth.boundaries)
        if got == want:
            exact += 1
        else:
            assert len(got) == len(want), (
                f"seed {seed}: found {len(got)} boundaries, expected {len(want)}"
            )
            for g, w in zip(got, want):
                assert abs(g - w) <= RECOVERY_MAX_OFF_BY, (
                    f"seed {seed}: boundary {g} is off from {w} by more than "
                    f"{RECOVERY_MAX_OFF_BY}"
                )
    rate = exact / RECOVERY_SEEDS
    ok = rate >= RECOVERY_MIN_EXACT
    report(
        4, ok,
        f"{exact}/{RECOVERY_SEEDS} exact boundary recoveries "
        f"({rate:.0%}, need >= {RECOVERY_MIN_EXACT:.0%}); misses off by <= "
        f"{RECOVERY_MAX_OFF_BY}",
    )
    assert ok


def test_criterion_5_default_segment_budget(report):
    # Defaults never exceed the budget even when the data has more phases.
    for n_phases, seed in ((1, 1), (2, 2), (14, 4)):
        docs, session, _ = generate_synthetic(
            seed, n_docs=70, n_events=420, n_phases=n_phases
        )
        seq = vectorize_session(build_vocabulary(docs), session, docs)
        segments = binary_segmentation(seq)
        assert 1 <= len(segments) <= DEFAULT_MAX_SEGMENTS

    hetero = Workspace.load(HETERO_WORKSPACE)
    response = hetero.run_pipeline(HETERO_SESSION)
    n = len(response.cards)
    ok = n == DEFAULT_MAX_SEGMENTS
    report(
        5, ok,
        f"defaults cap at {DEFAULT_MAX_SEGMENTS} segments; heterogeneous "
        f"fixture produced exactly {n}",
    )
    assert ok


def test_criterion_6_desk_scale_run(report):
    start = time.perf_counter()
    workspace = Workspace.load(DESK_WORKSPACE)
    response = workspace.run_pipeline(DESK_SESSION)
    elapsed = time.perf_counter() - start

    session = workspace.sessions[DESK_SESSION]
    assert 102 <= len(workspace.corpus) <= 158
    assert len(workspace.corpus) == DESK_CORPUS_SIZE
    assert len(session.events) == 600
    assert 120 <= session.duration_ms // 60_000 <= 180

    # Hand count unique opened documents straight from the raw log file.
    raw = (DESK_WORKSPACE / "sessions" / f"{DESK_SESSION}.jsonl").read_text("utf-8")
    opened = {
        rec["doc_id"]
        for rec in map(json.loads, raw.splitlines())
        if rec["kind"] == "DocOpen"
    }
    expected_pct = len(opened) / DESK_CORPUS_SIZE
    assert response.overview.pct_corpus_reviewed == expected_pct

    from provcards.export import to_json

    second = Workspace.load(DESK_WORKSPACE).run_pipeline(DESK_SESSION)
    identical = to_json(response).encode() == to_json(second).encode()
    ok = elapsed < DESK_TIME_BUDGET_S and identical
    report(
        6, ok,
        f"load+summarize in {elapsed:.2f}s (budget {DESK_TIME_BUDGET_S}s); "
        f"pct_corpus_reviewed == {len(opened)}/{DESK_CORPUS_SIZE} exactly; "
        f"JSON byte-identical across runs: {identical}",
    )
    assert elapsed < DESK_TIME_BUDGET_S
    assert identical


def test_criterion_7_degraded_mode_without_corpus(report, tmp_path):
    target = tmp_path / "degraded"
    shutil.copytree(DESK_WORKSPACE, target)
    (target / "corpus.jsonl").unlink()

    workspace = Workspace.load(target)
    assert workspace.degraded
    response = workspace.run_pipeline(DESK_SESSION)
    warned = any("interaction text only" in w for w in response.warnings)
    valid = (
        bool(response.cards)
        and all(card.prose for card in response.cards)
        and response.overview.n_events == 600
        and json.dumps(response.to_dict()) != ""
    )
    ok = warned and valid
    report(
        7, ok,
        f"corpus removed: {len(response.cards)} cards from interaction text "
        f"alone, degraded warning present: {warned}",
    )
    assert ok


def test_criterion_8_template_grammar(report):
    slots = {
        "n": 3, "one": 1, "items": ["alpha", "beta", "gamma"],
        "flag": True, "off": False, "empty": [],
    }
    cases = [
        ("{n}", "3"),
        ("{n} {n|plural:item:items}", "3 items"),
        ("{one} {one|plural:item:items}", "1 item"),
        ("{items|list:2}", "alpha and beta"),
        ("{items|list:3}", "alpha, beta and gamma"),
        ("{?flag yes {n}}", "yes 3"),
        ("{?off never {missing}}", ""),
        ("{?flag {?off x}outer}", "outer"),
        ("{?empty skipped}", ""),
    ]
    for template, expected in cases:
        text, spans = render_template(template, slots)
        assert text == expected, f"{template!r} -> {text!r}, wanted {expected!r}"
        for span in spans:
            assert 0 <= span.start <= span.end <= len(text)

    # Every span substring equals the rendering of its slot value.
    text, spans = render_template(
        "{n} and {items|list:2} plus {n|plural:item:items}", slots
    )
    rendered = [text[s.start:s.end] for s in spans]
    assert rendered == ["3", "alpha and beta", "items"]

    with pytest.raises(TemplateError):
        render_template("{missing}", slots)
    with pytest.raises(TemplateError):
        render_template("{?missing x}", slots)
    with pytest.raises(TemplateError):
        render_template("{n|list:0}", slots)
    with pytest.raises(TemplateError):
        render_template("{unclosed", slots)

    report(
        8, True,
        f"{len(cases)} grammar renderings, span-substring equality, and "
        f"error cases all hold",
    )


def test_criterion_9_keyword_and_link_soundness(report):
    checked_cards = 0
    for root, session_id in (
        (DESK_WORKSPACE, DESK_SESSION),
        (HETERO_WORKSPACE, HETERO_SESSION),
    ):
        workspace = Workspace.load(root)
        response = workspace.run_pipeline(session_id)
        session = workspace.sessions[session_id]
        by_seq = {ev.seq: ev for ev in session.events}
        docs = {d.id: d for d in workspace.corpus}
        seq = vectorize_session(workspace.vocabulary(), session, docs)

        for card, segment in zip(response.cards, response.segments):
            member_tokens: set[str] = set()
            for pos in range(segment.start, segment.end):
                event = by_seq[seq.items[pos][0]]
                if event.text:
                    member_tokens.update(tokenize(event.text))
                if event.kind in (EventKind.DOC_OPEN, EventKind.AUDIO_PLAY) and event.doc_id:
                    member_tokens.update(tokenize(docs[event.doc_id].full_text))
            for term, weight in card.keywords:
                assert weight > 0
                assert term in member_tokens, (
                    f"{session_id} card {card.segment_index}: keyword {term!r} "
                    f"not in member text"
                )
            checked_cards += 1

        brute: dict[str, list[int]] = {}
        for card in response.cards:
            for term, _ in card.keywords:
                brute.setdefault(term, []).append(card.segment_index)
        assert response.link_index == brute

    report(
        9, True,
        f"{checked_cards} cards: keywords grounded in member text and "
        f"link_index matches a brute-force rescan",
    )
