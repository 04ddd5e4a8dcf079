"""Heuristic extraction of people and places from plain text."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Protocol

from .textvec import _load_wordlist, stopwords

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

# Titles that mark the following run as a person and drop out of the surface.
HONORIFICS = frozenset((
    "mr", "ms", "mrs", "dr", "prof", "gen", "col", "maj", "capt", "lt",
    "sgt", "adm", "sen", "rep", "rev",
))

# Sentence punctuation breaks capitalized runs and marks sentence starts.
_BREAK_CHARS = set(".!?;:\n\r…")


class EntityKind(str, Enum):
    PERSON = "Person"
    LOCATION = "Location"
    OTHER = "Other"


@dataclass(frozen=True)
class EntityMention:
    """One occurrence of an entity; surface is an exact input substring."""

    surface: str
    kind: EntityKind


class EntityExtractor(Protocol):
    """Anything that can turn text into entity mentions.

    Implementations must be deterministic and return surfaces that are
    substrings of the input. The bundled default is a gazetteer heuristic;
    a statistical pipeline can be dropped in behind the same method.
    """

    def extract(self, text: str) -> list[EntityMention]: ...


@lru_cache(maxsize=1)
def _gazetteers() -> tuple[frozenset[str], dict[tuple[str, ...], None], int]:
    given = frozenset(n.lower() for n in _load_wordlist("given_names.txt"))
    # Locations keyed by lowercase token tuple for multi-word lookup.
    locs: dict[tuple[str, ...], None] = {}
    max_len = 1
    for entry in _load_wordlist("locations.txt"):
        toks = tuple(entry.lower().split())
        locs[toks] = None
        max_len = max(max_len, len(toks))
    return given, locs, max_len


class HeuristicEntityExtractor:
    """Capitalization plus gazetteers; no models, no network, deterministic.

    Maximal runs of capitalized tokens are candidates. Within a run,
    honorifics are stripped (marking a person), multi-word location
    gazetteer entries are matched longest-first, and given-name tokens
    start person mentions. Adjacent repeats of the same place therefore
    come out as separate mentions rather than one long surface.
    """

    def extract(self, text: str) -> list[EntityMention]:
        given, locs, max_loc_len = _gazetteers()
        stops = stopwords()
        tokens = list(_TOKEN_RE.finditer(text))
        mentions: list[EntityMention] = []

        runs = self._capitalized_runs(text, tokens, stops)
        for run in runs:
            mentions.extend(self._segment_run(text, run, given, locs, max_loc_len))
        return mentions

    def _capitalized_runs(
        self,
        text: str,
        tokens: list[re.Match[str]],
        stops: frozenset[str],
    ) -> list[list[re.Match[str]]]:
        runs: list[list[re.Match[str]]] = []
        current: list[re.Match[str]] = []
        current_initial = False
        prev_end = 0

        def flush() -> None:
            nonlocal current
            if current and not self._drop(current, current_initial, stops):
                runs.append(current)
            current = []

        for tok in tokens:
            gap = text[prev_end:tok.start()]
            # A period straight after an honorific is an abbreviation dot
            # ("Gen. Franco"), not the end of a sentence.
            abbrev = (
                bool(current)
                and current[-1].group().lower() in HONORIFICS
                and gap.rstrip() == "."
            )
            sentence_initial = not abbrev and (
                prev_end == 0 or any(c in _BREAK_CHARS for c in gap)
            )
            if tok.group()[0].isupper():
                # Only plain space or hyphen may join a run, and never
                # across a sentence boundary.
                joinable = bool(current) and not sentence_initial and (
                    abbrev or gap.strip(" -") == ""
                )
                if not joinable:
                    flush()
                    current_initial = sentence_initial
                current.append(tok)
            else:
                flush()
            prev_end = tok.end()
        flush()
        return runs

    @staticmethod
    def _drop(run: list[re.Match[str]], sentence_initial: bool, stops: frozenset[str]) -> bool:
        # A lone sentence-opening word that is ordinary when lowercased
        # ("The", "They") is capitalization noise, not a name.
        return len(run) == 1 and sentence_initial and run[0].group().lower() in stops

    def _segment_run(
        self,
        text: str,
        run: list[re.Match[str]],
        given: frozenset[str],
        locs: dict[tuple[str, ...], None],
        max_loc_len: int,
    ) -> list[EntityMention]:
        mentions: list[EntityMention] = []
        pos = 0
        while pos < len(run):
            person_hint = False
            while pos < len(run) and run[pos].group().lower() in HONORIFICS:
                person_hint = True
                pos += 1
            if pos >= len(run):
                break
            if not person_hint:
                # Longest location match wins at this position.
                limit = min(max_loc_len, len(run) - pos)
                matched = 0
                for length in range(limit, 0, -1):
                    key = tuple(run[pos + i].group().lower() for i in range(length))
                    if key in locs:
                        matched = length
                        break
                if matched:
                    surface = text[run[pos].start():run[pos + matched - 1].end()]
                    mentions.append(EntityMention(surface, EntityKind.LOCATION))
                    pos += matched
                    continue
            start = pos
            kind = EntityKind.OTHER
            if person_hint or run[pos].group().lower() in given:
                kind = EntityKind.PERSON
            pos += 1
            # Absorb the rest of the name until something recognizable
            # (a place or a new honorific) starts its own mention.
            while pos < len(run):
                low = run[pos].group().lower()
                if low in HONORIFICS:
                    break
                if kind is not EntityKind.PERSON and low in given:
                    break
                if self._location_starts(run, pos, locs, max_loc_len):
                    break
                pos += 1
            surface = text[run[start].start():run[pos - 1].end()]
            mentions.append(EntityMention(surface, kind))
        return mentions

    @staticmethod
    def _location_starts(
        run: list[re.Match[str]],
        pos: int,
        locs: dict[tuple[str, ...], None],
        max_loc_len: int,
    ) -> bool:
        limit = min(max_loc_len, len(run) - pos)
        for length in range(1, limit + 1):
            if tuple(run[pos + i].group().lower() for i in range(length)) in locs:
                return True
        return False


_DEFAULT = HeuristicEntityExtractor()


def extract_entities_heuristic(text: str) -> list[EntityMention]:
    """Extract entity mentions with the bundled heuristic, one per occurrence."""
    return _DEFAULT.extract(text)


def count_entities(
    mentions: Iterable[EntityMention],
) -> list[tuple[str, EntityKind, int]]:
    """Aggregate mentions case-sensitively on surface.

    Sorted by count descending, then surface, so output is stable.
    """
    counts: Counter[tuple[str, EntityKind]] = Counter()
    for m in mentions:
        counts[(m.surface, m.kind)] += 1
    return sorted(
        ((surface, kind, n) for (surface, kind), n in counts.items()),
        key=lambda item: (-item[2], item[0], item[1].value),
    )
