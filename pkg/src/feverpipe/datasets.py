"""Entailment dataset construction.

Three variants, each in a plain and a titled-premise flavor:

* ONE — each retrieved sentence is its own example, labeled with the claim's
  gold label when it sits in a singleton gold evidence group and NEUTRAL
  otherwise.
* FIVE — the retrieved sentences are concatenated into one premise per
  claim; the label is the gold label only if some retrieved sentence sits
  in a singleton gold group.
* FIVE_ORACLE — same premise, but the label is always the claim's gold
  label (NOT ENOUGH INFO becomes NEUTRAL).

A verifiable claim whose gold evidence includes any multi-sentence group is
dropped entirely: no single sentence can carry its label.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .claims import Claim
from .labels import ClaimLabel, SentenceLabel, claim_to_sentence_label
from .retrieval import EvidenceCandidate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EntailmentExample:
    premise: str
    hypothesis: str
    label: SentenceLabel
    claim_id: int
    evidence: tuple[tuple[str, int], ...]

    def to_record(self) -> dict:
        return {
            "premise": self.premise,
            "hypothesis": self.hypothesis,
            "label": self.label.value,
            "provenance": {
                "claim_id": self.claim_id,
                "evidence": [[page, line] for page, line in self.evidence],
            },
        }


@dataclass
class ClassStats:
    counts: dict[SentenceLabel, int]
    majority_label: SentenceLabel
    majority_accuracy: float
    weights: dict[SentenceLabel, float]

    def to_dict(self) -> dict:
        return {
            "counts": {label.value: count for label, count in self.counts.items()},
            "majority_label": self.majority_label.value,
            "majority_accuracy": self.majority_accuracy,
            "weights": {label.value: weight for label, weight in self.weights.items()},
        }


def _retained_claims(claims: Iterable[Claim]) -> list[Claim]:
    retained = []
    for claim in claims:
        if claim.is_verifiable and claim.has_multi_sentence_group():
            continue
        retained.append(claim)
    return retained


def _singleton_pairs(claim: Claim) -> set[tuple[str, int]]:
    pairs: set[tuple[str, int]] = set()
    for group in claim.singleton_groups():
        pairs.update(group)
    return pairs


def _premise_of(candidate: EvidenceCandidate, titled: bool) -> str:
    return candidate.titled_premise if titled else candidate.sentence


def build_one(
    claims: Sequence[Claim],
    retrievals: Mapping[int, Sequence[EvidenceCandidate]],
    titled: bool = False,
) -> list[EntailmentExample]:
    """One example per retained (claim, candidate) pair."""
    examples: list[EntailmentExample] = []
    for claim in _retained_claims(claims):
        singleton_pairs = _singleton_pairs(claim)
        for candidate in retrievals.get(claim.id, ()):
            if (candidate.page, candidate.line) in singleton_pairs and claim.gold_label:
                label = claim_to_sentence_label(claim.gold_label)
            else:
                label = SentenceLabel.NEUTRAL
            examples.append(
                EntailmentExample(
                    premise=_premise_of(candidate, titled),
                    hypothesis=claim.text,
                    label=label,
                    claim_id=claim.id,
                    evidence=((candidate.page, candidate.line),),
                )
            )
    examples.sort(key=lambda e: (e.claim_id, e.evidence))
    return examples


def build_five(
    claims: Sequence[Claim],
    retrievals: Mapping[int, Sequence[EvidenceCandidate]],
    oracle: bool = False,
    titled: bool = False,
) -> list[EntailmentExample]:
    """One example per retained claim, premises joined in retrieval order."""
    examples: list[EntailmentExample] = []
    for claim in sorted(_retained_claims(claims), key=lambda c: c.id):
        candidates = list(retrievals.get(claim.id, ()))
        premise = " ".join(_premise_of(c, titled) for c in candidates)
        if oracle:
            label = claim_to_sentence_label(claim.gold_label or ClaimLabel.NOT_ENOUGH_INFO)
        else:
            singleton_pairs = _singleton_pairs(claim)
            hit = any((c.page, c.line) in singleton_pairs for c in candidates)
            if hit and claim.gold_label:
                label = claim_to_sentence_label(claim.gold_label)
            else:
                label = SentenceLabel.NEUTRAL
        examples.append(
            EntailmentExample(
                premise=premise,
                hypothesis=claim.text,
                label=label,
                claim_id=claim.id,
                evidence=tuple((c.page, c.line) for c in candidates),
            )
        )
    return examples


def class_stats(examples: Sequence[EntailmentExample]) -> ClassStats:
    """Label counts, majority-class accuracy, and inverse-frequency weights.

    Weights are total / (num_classes * count), so every class contributes
    the same weighted mass and the example-weighted mean is 1.
    """
    if not examples:
        raise ValueError("cannot compute class statistics of an empty dataset")
    counts: dict[SentenceLabel, int] = {}
    for example in examples:
        counts[example.label] = counts.get(example.label, 0) + 1
    total = len(examples)
    majority_label = max(counts, key=lambda label: (counts[label], label.value))
    weights = {
        label: total / (len(counts) * count) for label, count in counts.items()
    }
    return ClassStats(
        counts=counts,
        majority_label=majority_label,
        majority_accuracy=counts[majority_label] / total,
        weights=weights,
    )


def write_examples(path: str | Path, examples: Iterable[EntailmentExample]) -> None:
    with open(path, "w", encoding="utf-8") as fp:
        for example in examples:
            fp.write(json.dumps(example.to_record(), ensure_ascii=False) + "\n")


def read_examples(path: str | Path) -> list[EntailmentExample]:
    examples: list[EntailmentExample] = []
    with open(path, encoding="utf-8") as fp:
        for line in fp:
            if not line.strip():
                continue
            record = json.loads(line)
            provenance = record.get("provenance", {})
            examples.append(
                EntailmentExample(
                    premise=record["premise"],
                    hypothesis=record["hypothesis"],
                    label=SentenceLabel.parse(record["label"]),
                    claim_id=int(provenance.get("claim_id", -1)),
                    evidence=tuple(
                        (page, int(line_no))
                        for page, line_no in provenance.get("evidence", [])
                    ),
                )
            )
    return examples
