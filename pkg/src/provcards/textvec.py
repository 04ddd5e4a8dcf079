"""Tokenization, vocabulary construction, and TF-IDF vectorization.

Interaction text (queries, highlights, notes) is vectorized against the
document-built vocabulary but never extends document frequencies, so the
segmentation geometry does not depend on log length.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Mapping, Sequence

from .model import Document

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


@lru_cache(maxsize=None)
def _load_wordlist(name: str) -> frozenset[str]:
    raw = resources.files("provcards.resources").joinpath(name).read_text("utf-8")
    words = set()
    for line in raw.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line)
    return frozenset(words)


def stopwords() -> frozenset[str]:
    """The bundled English stopword list (lowercase)."""
    return _load_wordlist("stopwords.txt")


def tokenize(text: str) -> list[str]:
    """Lowercased word tokens, split on non-alphanumeric boundaries.

    Tokens shorter than 2 characters and stopwords are dropped. Pure numerals
    survive: dates and amounts matter in intelligence text.
    """
    stops = stopwords()
    return [
        tok
        for tok in _TOKEN_RE.findall(text.lower())
        if len(tok) >= 2 and tok not in stops
    ]


@dataclass(frozen=True)
class TermVector:
    """Sparse non-negative weight map over vocabulary terms.

    ``weights`` iterates in lexicographic term order, which makes every
    downstream computation (and its serialization) deterministic. Outputs of
    :func:`tfidf` are L2-normalized; segment centroids are not.
    """

    weights: Mapping[str, float] = field(default_factory=dict)

    @staticmethod
    def from_weights(weights: Mapping[str, float]) -> "TermVector":
        ordered = {t: float(w) for t, w in sorted(weights.items()) if w != 0.0}
        return TermVector(ordered)

    def get(self, term: str, default: float = 0.0) -> float:
        return self.weights.get(term, default)

    def norm(self) -> float:
        return math.sqrt(sum(w * w for w in self.weights.values()))

    def __len__(self) -> int:
        return len(self.weights)

    def __bool__(self) -> bool:
        return bool(self.weights)


EMPTY_VECTOR = TermVector({})


@dataclass(frozen=True)
class Vocabulary:
    """Corpus vocabulary with per-term document frequencies.

    ``terms`` is lexicographically ordered; ``df`` maps term -> number of
    documents containing it; idf uses the smoothed form
    ln((1 + n_docs) / (1 + df)) + 1, which stays finite for every term.
    """

    terms: tuple[str, ...]
    df: Mapping[str, int]
    n_docs: int

    def __contains__(self, term: str) -> bool:
        return term in self.df

    def __len__(self) -> int:
        return len(self.terms)

    def idf(self, term: str) -> float:
        return math.log((1 + self.n_docs) / (1 + self.df[term])) + 1.0


def build_vocabulary(docs: Sequence[Document]) -> Vocabulary:
    """Vocabulary over document full texts (title concatenated with body)."""
    if not docs:
        raise ValueError("cannot build a vocabulary from an empty corpus")
    df: Counter[str] = Counter()
    for doc in docs:
        df.update(set(tokenize(doc.full_text)))
    terms = tuple(sorted(df))
    return Vocabulary(terms=terms, df=dict(sorted(df.items())), n_docs=len(docs))


def build_vocabulary_from_texts(texts: Iterable[str]) -> Vocabulary:
    """Degraded-mode vocabulary: each text counts as one document for df."""
    docs = [Document(id=f"t{i}", body=t) for i, t in enumerate(texts)]
    if not docs:
        raise ValueError("cannot build a vocabulary from no texts")
    return build_vocabulary(docs)


def tfidf(vocab: Vocabulary, text: str) -> TermVector:
    """L2-normalized TF-IDF vector of ``text`` against ``vocab``.

    tf is the raw token count; tokens absent from the vocabulary are ignored.
    All-unknown or empty text yields the empty vector.
    """
    counts = Counter(t for t in tokenize(text) if t in vocab.df)
    if not counts:
        return EMPTY_VECTOR
    raw = {t: c * vocab.idf(t) for t, c in counts.items()}
    norm = math.sqrt(sum(w * w for w in raw.values()))
    return TermVector.from_weights({t: w / norm for t, w in raw.items()})
