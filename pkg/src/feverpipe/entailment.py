"""Sentence-level entailment classification.

Three interchangeable classifiers score a (premise, hypothesis) pair into a
distribution over SUPPORTS / REFUTES / NEUTRAL:

* LexicalClassifier — a deterministic token-overlap heuristic.  It exists so
  the pipeline runs end to end without any model; nothing downstream relies
  on its linguistic quality.
* OracleClassifier — replays gold evidence membership; only usable when
  gold labels are available and establishes the retrieval-limited ceiling.
* RemoteClassifier — fronts an external model over HTTP (POST /classify).
  The heavy model never runs in-process.

Transport failures are retryable; a batch that still fails after retries is
recorded as NEUTRAL (the no-information element of aggregation) so a long
run never aborts mid-way.
"""

from __future__ import annotations

import json
import logging
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import requests

from .claims import Claim
from .corpus import display_title
from .labels import SentenceLabel, claim_to_sentence_label
from .retrieval import EvidenceCandidate
from .analysis import tokenize

logger = logging.getLogger(__name__)

MODEL_URL_ENV_VAR = "FEVERPIPE_MODEL_URL"

SCORE_TOLERANCE = 1e-6

# Higher priority wins argmax ties.
_TIE_PRIORITY = {
    SentenceLabel.NEUTRAL: 0,
    SentenceLabel.REFUTES: 1,
    SentenceLabel.SUPPORTS: 2,
}

_SCORE_ORDER = (SentenceLabel.SUPPORTS, SentenceLabel.REFUTES, SentenceLabel.NEUTRAL)

NEGATION_TOKENS = frozenset({"not", "never", "no", "n't", "refused", "incapable", "only"})


@dataclass(frozen=True)
class SentenceVerdict:
    """Label plus the (supports, refutes, neutral) probability triple."""

    label: SentenceLabel
    scores: tuple[float, float, float]

    def __post_init__(self) -> None:
        if len(self.scores) != 3 or any(s < 0 for s in self.scores):
            raise ValueError(f"scores must be 3 non-negative reals: {self.scores!r}")
        if abs(sum(self.scores) - 1.0) > SCORE_TOLERANCE:
            raise ValueError(f"scores must sum to 1: {self.scores!r}")
        if self.score_for(self.label) < max(self.scores):
            raise ValueError("label must be an argmax of the scores")

    def score_for(self, label: SentenceLabel) -> float:
        return self.scores[_SCORE_ORDER.index(label)]

    @classmethod
    def from_scores(cls, supports: float, refutes: float, neutral: float) -> "SentenceVerdict":
        scores = (supports, refutes, neutral)
        label = max(
            _SCORE_ORDER,
            key=lambda lab: (scores[_SCORE_ORDER.index(lab)], _TIE_PRIORITY[lab]),
        )
        return cls(label=label, scores=scores)

    @classmethod
    def certain(cls, label: SentenceLabel) -> "SentenceVerdict":
        scores = tuple(1.0 if lab is label else 0.0 for lab in _SCORE_ORDER)
        return cls(label=label, scores=scores)  # type: ignore[arg-type]


@dataclass(frozen=True)
class PremisePair:
    """One classification request; provenance is only needed by the oracle."""

    premise: str
    hypothesis: str
    claim_id: int | None = None
    page: str | None = None
    line: int | None = None

    @classmethod
    def from_candidate(
        cls, candidate: EvidenceCandidate, hypothesis: str, titled: bool = True
    ) -> "PremisePair":
        return cls(
            premise=candidate.titled_premise if titled else candidate.sentence,
            hypothesis=hypothesis,
            claim_id=candidate.claim_id,
            page=candidate.page,
            line=candidate.line,
        )


class EntailmentClassifier:
    """Base interface: classify_batch must be order-preserving."""

    def classify(self, pair: PremisePair) -> SentenceVerdict:
        return self.classify_batch([pair])[0]

    def classify_batch(self, pairs: Sequence[PremisePair]) -> list[SentenceVerdict]:
        raise NotImplementedError


def _content_tokens(text: str) -> set[str]:
    return {t.surface.lower() for t in tokenize(text) if not t.is_punctuation}


def _numeric_tokens(tokens: set[str]) -> set[str]:
    return {t for t in tokens if any(ch.isdigit() for ch in t)}


class LexicalClassifier(EntailmentClassifier):
    """Token-overlap heuristic.

    Overlap ratio r = |hypothesis tokens ∩ premise tokens| / |hypothesis
    tokens| (title tokens count).  r < 0.5 is NEUTRAL; otherwise REFUTES when
    exactly one side carries a negation token or when both sides carry
    numeric tokens that disagree, else SUPPORTS.  The chosen label gets 0.8
    mass, the others 0.1 each.
    """

    def classify_batch(self, pairs: Sequence[PremisePair]) -> list[SentenceVerdict]:
        return [self._classify_one(pair) for pair in pairs]

    def _classify_one(self, pair: PremisePair) -> SentenceVerdict:
        if not pair.hypothesis:
            raise ValueError("hypothesis must be non-empty")
        hypothesis = _content_tokens(pair.hypothesis)
        premise = _content_tokens(pair.premise)
        if not hypothesis:
            return self._verdict(SentenceLabel.NEUTRAL)
        overlap = len(hypothesis & premise) / len(hypothesis)
        if overlap < 0.5:
            return self._verdict(SentenceLabel.NEUTRAL)

        negated_sides = sum(
            1 for side in (hypothesis, premise) if side & NEGATION_TOKENS
        )
        hyp_numbers = _numeric_tokens(hypothesis)
        prem_numbers = _numeric_tokens(premise)
        numbers_disagree = bool(hyp_numbers and prem_numbers and hyp_numbers != prem_numbers)
        if negated_sides == 1 or numbers_disagree:
            return self._verdict(SentenceLabel.REFUTES)
        return self._verdict(SentenceLabel.SUPPORTS)

    @staticmethod
    def _verdict(label: SentenceLabel) -> SentenceVerdict:
        scores = tuple(0.8 if lab is label else 0.1 for lab in _SCORE_ORDER)
        return SentenceVerdict(label=label, scores=scores)  # type: ignore[arg-type]


class OracleClassifier(EntailmentClassifier):
    """Replays gold labels for candidates inside any gold evidence group."""

    def __init__(self, gold_claims: Iterable[Claim] | Mapping[int, Claim]):
        if isinstance(gold_claims, Mapping):
            self._claims = dict(gold_claims)
        else:
            self._claims = {claim.id: claim for claim in gold_claims}

    def classify_batch(self, pairs: Sequence[PremisePair]) -> list[SentenceVerdict]:
        return [self._classify_one(pair) for pair in pairs]

    def _classify_one(self, pair: PremisePair) -> SentenceVerdict:
        if pair.claim_id is None or pair.page is None or pair.line is None:
            raise ValueError("oracle classification requires candidate provenance")
        claim = self._claims.get(pair.claim_id)
        if claim is None or not claim.gold_label:
            raise ValueError(f"no gold label for claim {pair.claim_id}")
        if claim.is_verifiable and (pair.page, pair.line) in claim.all_evidence_pairs():
            return SentenceVerdict.certain(claim_to_sentence_label(claim.gold_label))
        return SentenceVerdict.certain(SentenceLabel.NEUTRAL)


class RemoteClassificationError(RuntimeError):
    """Transport or protocol failure; retryable, never a verdict."""


class RemoteClassifier(EntailmentClassifier):
    """HTTP client for the external model service.

    Pairs are chunked into batches of ``batch_size``; up to ``max_in_flight``
    batches run concurrently and results are reassembled in input order.
    The FEVERPIPE_MODEL_URL environment variable overrides ``endpoint``.
    """

    def __init__(
        self,
        endpoint: str,
        batch_size: int = 32,
        timeout: float = 30.0,
        max_retries: int = 3,
        retry_backoff: float = 0.5,
        max_in_flight: int = 1,
    ):
        endpoint = os.environ.get(MODEL_URL_ENV_VAR) or endpoint
        if not endpoint:
            raise ValueError("remote classifier requires an endpoint")
        if batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        base = endpoint.rstrip("/")
        self.url = base if base.endswith("/classify") else base + "/classify"
        self.batch_size = batch_size
        self.timeout = timeout
        self.max_retries = max_retries
        self.retry_backoff = retry_backoff
        self.max_in_flight = max(1, max_in_flight)
        self.failure_count = 0
        self._local = threading.local()

    def _session(self) -> requests.Session:
        session = getattr(self._local, "session", None)
        if session is None:
            session = requests.Session()
            self._local.session = session
        return session

    def ping(self) -> None:
        """Probe the endpoint with an empty batch; raises when unreachable."""
        self._request([])

    def classify_batch(self, pairs: Sequence[PremisePair]) -> list[SentenceVerdict]:
        chunks = [
            pairs[start : start + self.batch_size]
            for start in range(0, len(pairs), self.batch_size)
        ]
        if not chunks:
            return []
        if self.max_in_flight == 1 or len(chunks) == 1:
            results = [self._classify_chunk(chunk) for chunk in chunks]
        else:
            with ThreadPoolExecutor(max_workers=self.max_in_flight) as pool:
                results = list(pool.map(self._classify_chunk, chunks))
        return [verdict for chunk_result in results for verdict in chunk_result]

    def _classify_chunk(self, chunk: Sequence[PremisePair]) -> list[SentenceVerdict]:
        try:
            return self._request(chunk)
        except RemoteClassificationError as exc:
            self.failure_count += len(chunk)
            logger.warning(
                "remote classification failed for %d pairs, recording NEUTRAL: %s",
                len(chunk),
                exc,
            )
            return [SentenceVerdict.certain(SentenceLabel.NEUTRAL) for _ in chunk]

    def _request(self, chunk: Sequence[PremisePair]) -> list[SentenceVerdict]:
        payload = {
            "pairs": [{"premise": p.premise, "hypothesis": p.hypothesis} for p in chunk]
        }
        last_error: Exception | None = None
        for attempt in range(self.max_retries + 1):
            if attempt and self.retry_backoff > 0:
                time.sleep(self.retry_backoff * (2 ** (attempt - 1)))
            try:
                response = self._session().post(self.url, json=payload, timeout=self.timeout)
                if response.status_code != 200:
                    raise RemoteClassificationError(
                        f"status {response.status_code} from {self.url}"
                    )
                return _parse_verdicts(response.json(), expected=len(chunk))
            except (requests.RequestException, ValueError, RemoteClassificationError) as exc:
                last_error = exc
                logger.debug("classify attempt %d failed: %s", attempt + 1, exc)
        raise RemoteClassificationError(str(last_error))


def _parse_verdicts(body: dict, expected: int) -> list[SentenceVerdict]:
    verdicts_payload = body.get("verdicts")
    if not isinstance(verdicts_payload, list) or len(verdicts_payload) != expected:
        raise RemoteClassificationError(
            f"expected {expected} verdicts, got {verdicts_payload!r}"
        )
    verdicts = []
    for entry in verdicts_payload:
        try:
            label = SentenceLabel.parse(entry["label"])
            scores = tuple(float(s) for s in entry["scores"])
            verdicts.append(SentenceVerdict(label=label, scores=scores))  # type: ignore[arg-type]
        except (KeyError, TypeError, ValueError) as exc:
            raise RemoteClassificationError(f"malformed verdict {entry!r}: {exc}") from exc
    return verdicts


def classify_candidates(
    classifier: EntailmentClassifier,
    candidates: Sequence[EvidenceCandidate],
    hypotheses: Mapping[int, str],
    titled: bool = True,
) -> list[tuple[EvidenceCandidate, SentenceVerdict]]:
    """Classify candidates against their claims' texts, preserving order."""
    pairs = [
        PremisePair.from_candidate(c, hypotheses[c.claim_id], titled=titled)
        for c in candidates
    ]
    verdicts = classifier.classify_batch(pairs)
    return list(zip(candidates, verdicts))


def classified_to_record(candidate: EvidenceCandidate, verdict: SentenceVerdict) -> dict:
    return {
        "claim_id": candidate.claim_id,
        "page": candidate.page,
        "line": candidate.line,
        "sentence": candidate.sentence,
        "label": verdict.label.value,
        "scores": list(verdict.scores),
    }


def classified_from_record(record: dict) -> tuple[EvidenceCandidate, SentenceVerdict]:
    sentence = record.get("sentence", "")
    candidate = EvidenceCandidate(
        claim_id=int(record["claim_id"]),
        page=record["page"],
        line=int(record["line"]),
        sentence=sentence,
        titled_premise=f"[{display_title(record['page'])}] {sentence}",
    )
    verdict = SentenceVerdict(
        label=SentenceLabel.parse(record["label"]),
        scores=tuple(float(s) for s in record["scores"]),  # type: ignore[arg-type]
    )
    return candidate, verdict


def write_classified(
    path: str | Path,
    classified: Iterable[tuple[EvidenceCandidate, SentenceVerdict]],
) -> None:
    """Classified-candidate JSONL: claim_id/page/line/sentence/label/scores."""
    with open(path, "w", encoding="utf-8") as fp:
        for candidate, verdict in classified:
            record = classified_to_record(candidate, verdict)
            fp.write(json.dumps(record, ensure_ascii=False) + "\n")


def read_classified(path: str | Path) -> list[tuple[EvidenceCandidate, SentenceVerdict]]:
    classified: list[tuple[EvidenceCandidate, SentenceVerdict]] = []
    with open(path, encoding="utf-8") as fp:
        for raw in fp:
            if raw.strip():
                classified.append(classified_from_record(json.loads(raw)))
    return classified
