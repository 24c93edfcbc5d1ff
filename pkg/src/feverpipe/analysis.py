"""Tokenization and TFIDF scoring shared by document and sentence retrieval.

The tokenizer splits on whitespace and punctuation boundaries but keeps
hyphenated words ("X-Men") and single-letter initials ("J.") whole, so
capitalized-phrase extraction can reassemble names like "J. R. R. Tolkien"
by joining surfaces with single spaces.

Index terms are lowercased unigrams and bigrams over the non-punctuation
tokens.  Term weight is tf * idf with idf = ln((N + 1) / (df + 1)) + 1 and
document vectors are L2-normalized, so cosine similarity is a dot product.
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Hashable, Iterable, Sequence

_TOKEN_RE = re.compile(r"[A-Z]\.|\w+(?:[-'.]\w+)*|[^\w\s]")

DocId = Hashable


@dataclass(frozen=True)
class Token:
    surface: str
    is_capitalized: bool
    position: int

    @property
    def is_digit_initial(self) -> bool:
        return self.surface[0].isdigit()

    @property
    def is_punctuation(self) -> bool:
        return not any(ch.isalnum() for ch in self.surface)


def tokenize(text: str) -> list[Token]:
    """Deterministic tokenization; original case is retained."""
    return [
        Token(surface=m.group(), is_capitalized=m.group()[0].isupper(), position=i)
        for i, m in enumerate(_TOKEN_RE.finditer(text))
    ]


def index_terms(text: str) -> list[str]:
    """Lowercased unigram and bigram terms; punctuation tokens excluded."""
    words = [t.surface.lower() for t in tokenize(text) if not t.is_punctuation]
    terms = list(words)
    terms.extend(f"{a} {b}" for a, b in zip(words, words[1:]))
    return terms


def idf(document_frequency: int, document_count: int) -> float:
    return math.log((document_count + 1) / (document_frequency + 1)) + 1.0


class TfidfIndex:
    """Inverted index over L2-normalized tf-idf document vectors."""

    def __init__(
        self,
        doc_vectors: dict[DocId, dict[str, float]],
        df: dict[str, int],
        doc_count: int,
        doc_order: Sequence[DocId],
    ):
        self.doc_vectors = doc_vectors
        self.df = df
        self.doc_count = doc_count
        self.doc_order = list(doc_order)
        self._postings: dict[str, list[tuple[DocId, float]]] = {}
        for doc_id in self.doc_order:
            for term, weight in self.doc_vectors[doc_id].items():
                self._postings.setdefault(term, []).append((doc_id, weight))

    def __len__(self) -> int:
        return self.doc_count

    def term_idf(self, term: str) -> float:
        return idf(self.df.get(term, 0), self.doc_count)

    def save(self, path: str | Path) -> None:
        for doc_id in self.doc_order:
            if not isinstance(doc_id, str):
                raise TypeError("only string document ids can be persisted")
        payload = {
            "doc_count": self.doc_count,
            "df": self.df,
            "doc_order": self.doc_order,
            "doc_vectors": {doc_id: self.doc_vectors[doc_id] for doc_id in self.doc_order},
        }
        with open(path, "w", encoding="utf-8") as fp:
            json.dump(payload, fp, ensure_ascii=False, sort_keys=True)

    @classmethod
    def load(cls, path: str | Path) -> "TfidfIndex":
        with open(path, encoding="utf-8") as fp:
            payload = json.load(fp)
        return cls(
            doc_vectors=payload["doc_vectors"],
            df=payload["df"],
            doc_count=payload["doc_count"],
            doc_order=payload["doc_order"],
        )


def build_index(documents: Iterable[tuple[DocId, str]]) -> TfidfIndex:
    """Index documents given as (doc_id, text) pairs.  Ids must be unique."""
    term_counts: dict[DocId, Counter] = {}
    doc_order: list[DocId] = []
    df: Counter = Counter()
    for doc_id, text in documents:
        if doc_id in term_counts:
            raise ValueError(f"duplicate document id: {doc_id!r}")
        counts = Counter(index_terms(text))
        term_counts[doc_id] = counts
        doc_order.append(doc_id)
        df.update(counts.keys())

    doc_count = len(doc_order)
    doc_vectors: dict[DocId, dict[str, float]] = {}
    for doc_id in doc_order:
        weights = {
            term: tf * idf(df[term], doc_count) for term, tf in term_counts[doc_id].items()
        }
        norm = math.sqrt(sum(w * w for w in weights.values()))
        if norm > 0:
            weights = {term: w / norm for term, w in weights.items()}
        doc_vectors[doc_id] = weights
    return TfidfIndex(doc_vectors, dict(df), doc_count, doc_order)


def score_query(index: TfidfIndex, query: str, k: int) -> list[tuple[DocId, float]]:
    """Top-k documents by cosine similarity, descending.

    Deterministic: ties break toward the lexicographically smaller doc_id.
    Zero-score documents are never returned, so fewer than k results is a
    valid outcome.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    query_counts = Counter(index_terms(query))
    query_weights = {
        term: tf * index.term_idf(term)
        for term, tf in query_counts.items()
        if term in index.df
    }
    norm = math.sqrt(sum(w * w for w in query_weights.values()))
    if norm == 0:
        return []

    scores: dict[DocId, float] = {}
    for term, q_weight in query_weights.items():
        for doc_id, d_weight in index._postings.get(term, ()):
            scores[doc_id] = scores.get(doc_id, 0.0) + q_weight * d_weight

    ranked = sorted(
        ((doc_id, score / norm) for doc_id, score in scores.items() if score > 0.0),
        key=lambda item: (-item[1], item[0]),
    )
    return ranked[:k]
