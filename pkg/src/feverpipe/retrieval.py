"""Candidate evidence retrieval.

Document retrieval unions three sources: the top TFIDF pages for the claim
text, pages whose title exactly matches a capitalized phrase from the claim,
and "X (film)" companions of those title matches.  Sentence selection either
ranks the pooled sentences by TFIDF against the claim or takes every
sentence in the first N lines of each page.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from .analysis import TfidfIndex, build_index, score_query, tokenize
from .claims import Claim
from .corpus import CorpusHandle, Page

# Lowercase function words a title phrase may bridge when capitalized
# tokens flank them ("The Lord of the Rings").
CONNECTOR_WORDS = frozenset({"of", "the", "a", "an", "and", "in", "on", "for"})

FILM_TITLE_SUFFIXES = ("_-LRB-film-RRB-", "_(film)")


class SentenceMode(str, Enum):
    TOP_K = "top-k"
    ENTIRE_ARTICLES = "entire-articles"


@dataclass(frozen=True)
class RetrievalConfig:
    doc_k: int = 5
    sentence_mode: SentenceMode = SentenceMode.TOP_K
    sentences_k: int = 5
    max_lines: int = 50
    use_title_in_tfidf: bool = False
    use_ne_retrieval: bool = False
    use_film_heuristic: bool = False

    def __post_init__(self) -> None:
        if self.doc_k < 1:
            raise ValueError("doc_k must be >= 1")
        if self.sentences_k < 1:
            raise ValueError("sentences_k must be >= 1")
        if self.max_lines < 1:
            raise ValueError("max_lines must be >= 1")
        if self.use_film_heuristic and not self.use_ne_retrieval:
            raise ValueError("the film heuristic requires NE retrieval")

    def to_dict(self) -> dict:
        return {
            "doc_k": self.doc_k,
            "sentence_mode": self.sentence_mode.value,
            "sentences_k": self.sentences_k,
            "max_lines": self.max_lines,
            "use_title_in_tfidf": self.use_title_in_tfidf,
            "use_ne_retrieval": self.use_ne_retrieval,
            "use_film_heuristic": self.use_film_heuristic,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "RetrievalConfig":
        data = dict(payload)
        if "sentence_mode" in data:
            data["sentence_mode"] = SentenceMode(data["sentence_mode"])
        return cls(**data)


@dataclass(frozen=True)
class EvidenceCandidate:
    claim_id: int
    page: str
    line: int
    sentence: str
    titled_premise: str

    @classmethod
    def build(cls, claim_id: int, page: Page, line: int, sentence: str) -> "EvidenceCandidate":
        return cls(
            claim_id=claim_id,
            page=page.raw_title,
            line=line,
            sentence=sentence,
            titled_premise=f"[{page.display_title}] {sentence}",
        )


def extract_title_phrases(claim_text: str) -> list[str]:
    """Capitalized (or digit-initial) phrases that may be page titles.

    Maximal runs of capitalized tokens, optionally bridging interior
    lowercase connector words.  The claim-initial run is kept even though
    sentence-initial capitalization is uninformative; a single-token run
    that is itself a connector or punctuation is dropped.  Returned in
    first-occurrence order without duplicates.
    """
    tokens = tokenize(claim_text)
    phrases: list[str] = []
    seen: set[str] = set()

    def starts_run(position: int) -> bool:
        token = tokens[position]
        return token.is_capitalized or token.is_digit_initial

    i = 0
    while i < len(tokens):
        if not starts_run(i):
            i += 1
            continue
        end = i
        scan = i + 1
        while True:
            probe = scan
            while probe < len(tokens) and tokens[probe].surface in CONNECTOR_WORDS:
                probe += 1
            if probe < len(tokens) and starts_run(probe):
                end = probe
                scan = probe + 1
            else:
                break
        run = tokens[i : end + 1]
        phrase = " ".join(t.surface for t in run)
        trivial = len(run) == 1 and (
            run[0].surface.lower() in CONNECTOR_WORDS or run[0].is_punctuation
        )
        if not trivial and phrase not in seen:
            seen.add(phrase)
            phrases.append(phrase)
        i = end + 1
    return phrases


def retrieve_documents(
    claim: Claim,
    config: RetrievalConfig,
    index: TfidfIndex,
    corpus: CorpusHandle,
) -> list[str]:
    """Ordered page titles: TFIDF pages by rank, then exact title matches in
    phrase order, then film companions; duplicates keep their first position.
    """
    ordered: list[str] = []
    seen: set[str] = set()

    def add(title: str) -> None:
        if title not in seen:
            seen.add(title)
            ordered.append(title)

    for doc_id, _ in score_query(index, claim.text, config.doc_k):
        add(str(doc_id))

    if config.use_ne_retrieval:
        title_matches: list[str] = []
        for phrase in extract_title_phrases(claim.text):
            page = corpus.get_page(phrase)
            if page is not None:
                title_matches.append(page.raw_title)
                add(page.raw_title)
        if config.use_film_heuristic:
            for base_title in title_matches:
                for suffix in FILM_TITLE_SUFFIXES:
                    film_page = corpus.get_page(base_title + suffix)
                    if film_page is not None:
                        add(film_page.raw_title)

    return ordered


def select_sentences(
    claim: Claim,
    pages: Sequence[str],
    config: RetrievalConfig,
    corpus: CorpusHandle,
) -> list[EvidenceCandidate]:
    """Pick candidate sentences from the retrieved pages.

    TOP_K mode pools every non-empty sentence, scores it by TFIDF against
    the claim (with the page title prepended when use_title_in_tfidf, so
    statements from a relevant article get credit even when the subject is
    not repeated), and keeps the top sentences_k.  ENTIRE_ARTICLES mode
    keeps every non-empty sentence whose entry falls within the first
    max_lines lines of its page; empty lines still consume window slots.
    """
    resolved: list[Page] = []
    seen_titles: set[str] = set()
    for title in pages:
        page = corpus.get_page(title)
        if page is not None and page.raw_title not in seen_titles:
            seen_titles.add(page.raw_title)
            resolved.append(page)

    if config.sentence_mode is SentenceMode.ENTIRE_ARTICLES:
        return [
            EvidenceCandidate.build(claim.id, page, line_no, sentence)
            for page in resolved
            for line_no, sentence in page.lines[: config.max_lines]
            if sentence
        ]

    pool: dict[tuple[str, int], tuple[Page, str]] = {}
    documents: list[tuple[tuple[str, int], str]] = []
    for page in resolved:
        for line_no, sentence in page.lines:
            if not sentence:
                continue
            key = (page.raw_title, line_no)
            pool[key] = (page, sentence)
            scoring_text = (
                f"{page.display_title} {sentence}" if config.use_title_in_tfidf else sentence
            )
            documents.append((key, scoring_text))

    if not documents:
        return []
    sentence_index = build_index(documents)
    ranked = score_query(sentence_index, claim.text, config.sentences_k)
    candidates = []
    for key, _ in ranked:
        page, sentence = pool[key]
        candidates.append(EvidenceCandidate.build(claim.id, page, key[1], sentence))
    return candidates


def retrieve(
    claim: Claim,
    config: RetrievalConfig,
    index: TfidfIndex,
    corpus: CorpusHandle,
) -> list[EvidenceCandidate]:
    pages = retrieve_documents(claim, config, index, corpus)
    return select_sentences(claim, pages, config, corpus)


def retrieve_all(
    claims: Iterable[Claim],
    config: RetrievalConfig,
    index: TfidfIndex,
    corpus: CorpusHandle,
) -> dict[int, list[EvidenceCandidate]]:
    """Per-claim candidates, keyed and ordered by claim id."""
    results: dict[int, list[EvidenceCandidate]] = {}
    for claim in sorted(claims, key=lambda c: c.id):
        results[claim.id] = retrieve(claim, config, index, corpus)
    return results


def build_document_index(corpus: CorpusHandle, use_title_in_tfidf: bool) -> TfidfIndex:
    """Index page bodies, optionally prefixed with their display title."""
    def documents():
        for page in corpus.iter_pages():
            text = page.text()
            if use_title_in_tfidf:
                text = f"{page.display_title} {text}"
            yield page.raw_title, text

    return build_index(documents())


def resolve_candidates(
    corpus: CorpusHandle,
    claim_id: int,
    pairs: Iterable[tuple[str, int]],
) -> tuple[list[EvidenceCandidate], int]:
    """Rehydrate (page, line) pairs into candidates; count unresolvable ones."""
    candidates: list[EvidenceCandidate] = []
    missing = 0
    for page_title, line_no in pairs:
        page = corpus.get_page(page_title)
        sentence = page.line_text(line_no) if page is not None else None
        if sentence is None:
            missing += 1
            continue
        candidates.append(EvidenceCandidate.build(claim_id, page, line_no, sentence))
    return candidates, missing


def write_retrievals(path: str | Path, retrievals: dict[int, list[EvidenceCandidate]]) -> None:
    """One JSON line per claim: {id, candidates: [[page, line], ...]}."""
    with open(path, "w", encoding="utf-8") as fp:
        for claim_id in sorted(retrievals):
            record = {
                "id": claim_id,
                "candidates": [[c.page, c.line] for c in retrievals[claim_id]],
            }
            fp.write(json.dumps(record, ensure_ascii=False) + "\n")


def read_retrievals(path: str | Path) -> dict[int, list[tuple[str, int]]]:
    retrievals: dict[int, list[tuple[str, int]]] = {}
    with open(path, encoding="utf-8") as fp:
        for line in fp:
            if not line.strip():
                continue
            record = json.loads(line)
            retrievals[int(record["id"])] = [
                (page, int(line_no)) for page, line_no in record["candidates"]
            ]
    return retrievals
