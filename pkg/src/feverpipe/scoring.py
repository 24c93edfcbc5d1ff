"""Evaluation metrics.

The headline metric gives a claim credit only when its label is correct
and, for verifiable claims, some complete gold evidence group appears among
the submitted evidence.  Sentence-level quality is reported as accuracy and
Cohen's Kappa, since the per-sentence label distribution is skewed enough
that raw accuracy rewards the trivial majority predictor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Collection, Mapping, Sequence

import numpy as np

from .aggregation import Submission
from .claims import Claim
from .labels import ClaimLabel, SentenceLabel

CLAIM_CLASSES = (ClaimLabel.SUPPORTS, ClaimLabel.REFUTES, ClaimLabel.NOT_ENOUGH_INFO)
SENTENCE_CLASSES = (SentenceLabel.SUPPORTS, SentenceLabel.REFUTES, SentenceLabel.NEUTRAL)

SKIP_RULE_NO_SINGLETON = "no-singleton"
SKIP_RULE_ANY_MULTI = "any-multi"


@dataclass
class ScoreReport:
    fever_score: float
    label_accuracy: float
    evidence_precision: float
    evidence_recall: float
    evidence_f1: float
    confusion_labels: list[str]
    confusion_matrix: list[list[int]]
    claim_count: int
    verifiable_count: int

    def to_dict(self) -> dict:
        return {
            "fever_score": self.fever_score,
            "label_accuracy": self.label_accuracy,
            "evidence_precision": self.evidence_precision,
            "evidence_recall": self.evidence_recall,
            "evidence_f1": self.evidence_f1,
            "confusion": {
                "labels": self.confusion_labels,
                "matrix": self.confusion_matrix,
            },
            "claim_count": self.claim_count,
            "verifiable_count": self.verifiable_count,
        }


def fever_score(
    submissions: Sequence[Submission],
    gold_claims: Sequence[Claim],
) -> ScoreReport:
    """Score submissions against gold claims.

    A missing submission counts as NOT ENOUGH INFO with no evidence; a
    submission for an unknown claim or a duplicate submission is an error,
    as are duplicate evidence pairs within one submission.
    """
    gold_by_id: dict[int, Claim] = {}
    for claim in gold_claims:
        if claim.gold_label is None:
            raise ValueError(f"claim {claim.id} has no gold label")
        gold_by_id[claim.id] = claim

    by_id: dict[int, Submission] = {}
    for submission in submissions:
        if submission.claim_id not in gold_by_id:
            raise ValueError(f"submission for unknown claim id {submission.claim_id}")
        if submission.claim_id in by_id:
            raise ValueError(f"duplicate submission for claim id {submission.claim_id}")
        if len(set(submission.predicted_evidence)) != len(submission.predicted_evidence):
            raise ValueError(f"duplicate evidence pairs in claim {submission.claim_id}")
        by_id[submission.claim_id] = submission

    credited = 0
    label_matches = 0
    submitted_pairs = 0
    correct_pairs = 0
    covered_claims = 0
    verifiable = 0
    class_index = {label: i for i, label in enumerate(CLAIM_CLASSES)}
    confusion = np.zeros((len(CLAIM_CLASSES), len(CLAIM_CLASSES)), dtype=int)

    for claim in gold_claims:
        submission = by_id.get(
            claim.id,
            Submission(claim_id=claim.id, predicted_label=ClaimLabel.NOT_ENOUGH_INFO),
        )
        predicted = submission.predicted_label
        confusion[class_index[predicted], class_index[claim.gold_label]] += 1

        label_ok = predicted == claim.gold_label
        if label_ok:
            label_matches += 1

        evidence_set = set(submission.predicted_evidence)
        some_group_covered = any(
            group <= evidence_set for group in claim.evidence_groups
        )
        if claim.is_verifiable:
            verifiable += 1
            gold_pairs = claim.all_evidence_pairs()
            submitted_pairs += len(evidence_set)
            correct_pairs += len(evidence_set & gold_pairs)
            if some_group_covered:
                covered_claims += 1
            if label_ok and some_group_covered:
                credited += 1
        elif label_ok:
            credited += 1

    total = len(gold_claims)
    precision = correct_pairs / submitted_pairs if submitted_pairs else 0.0
    recall = covered_claims / verifiable if verifiable else 0.0
    f1 = 2 * precision * recall / (precision + recall) if (precision + recall) else 0.0

    return ScoreReport(
        fever_score=credited / total if total else 0.0,
        label_accuracy=label_matches / total if total else 0.0,
        evidence_precision=precision,
        evidence_recall=recall,
        evidence_f1=f1,
        confusion_labels=[label.value for label in CLAIM_CLASSES],
        confusion_matrix=confusion.tolist(),
        claim_count=total,
        verifiable_count=verifiable,
    )


def contingency_table(
    predicted: Sequence,
    reference: Sequence,
    classes: Sequence,
) -> np.ndarray:
    """Square count matrix indexed by (predicted class, reference class)."""
    if len(predicted) != len(reference):
        raise ValueError("predicted and reference label lists differ in length")
    index = {label: i for i, label in enumerate(classes)}
    table = np.zeros((len(classes), len(classes)), dtype=int)
    for pred, ref in zip(predicted, reference):
        table[index[pred], index[ref]] += 1
    return table


def cohens_kappa(table) -> float | None:
    """Chance-corrected agreement of a square contingency table.

    kappa = (p_o - p_e) / (1 - p_e) with p_o the diagonal fraction and p_e
    the product-of-marginals expectation.  When both marginals concentrate
    on a single class p_e is 1 and kappa is undefined; that degenerate case
    is reported as None rather than a number.
    """
    counts = np.asarray(table)
    if counts.ndim != 2 or counts.shape[0] != counts.shape[1]:
        raise ValueError("contingency table must be square")
    if (counts < 0).any():
        raise ValueError("contingency table counts must be non-negative")
    total = int(counts.sum())
    if total == 0:
        raise ValueError("contingency table must have a positive total")

    # Integer arithmetic keeps the degenerate check exact.
    rows = [int(r) for r in counts.sum(axis=1)]
    cols = [int(c) for c in counts.sum(axis=0)]
    trace = int(np.trace(counts))
    expected = sum(r * c for r, c in zip(rows, cols))
    denominator = total * total - expected
    if denominator == 0:
        return None
    return (total * trace - expected) / denominator


def retrieval_rate(
    gold_claims: Sequence[Claim],
    retrievals: Mapping[int, Collection[tuple[str, int]]],
    skip_rule: str = SKIP_RULE_NO_SINGLETON,
) -> float:
    """Fraction of eligible claims whose evidence was retrieved.

    A claim counts as retrieved when it is not verifiable or when the
    sentence of one of its singleton gold groups is among its retrieved
    candidates.  Multi-sentence-evidence claims are skipped: by default
    only claims with no singleton group at all, or with ``any-multi``, any
    claim carrying a multi-sentence group.
    """
    if skip_rule not in (SKIP_RULE_NO_SINGLETON, SKIP_RULE_ANY_MULTI):
        raise ValueError(f"unknown skip rule: {skip_rule!r}")
    counted = 0
    successes = 0
    for claim in gold_claims:
        if claim.is_verifiable:
            if skip_rule == SKIP_RULE_NO_SINGLETON and not claim.singleton_groups():
                continue
            if skip_rule == SKIP_RULE_ANY_MULTI and claim.has_multi_sentence_group():
                continue
        counted += 1
        if not claim.is_verifiable:
            successes += 1
            continue
        retrieved = set(retrievals.get(claim.id, ()))
        if any(group <= retrieved for group in claim.singleton_groups()):
            successes += 1
    if counted == 0:
        return 1.0
    return successes / counted


@dataclass
class SupportMetrics:
    accuracy: float
    kappa: float | None

    def to_dict(self) -> dict:
        return {"accuracy": self.accuracy, "kappa": self.kappa}


def support_metrics(
    predicted: Sequence[SentenceLabel],
    gold: Sequence[SentenceLabel],
) -> SupportMetrics:
    """Sentence-level accuracy and kappa over aligned label lists."""
    if len(predicted) != len(gold):
        raise ValueError("predicted and gold label lists differ in length")
    if not predicted:
        raise ValueError("cannot score empty label lists")
    matches = sum(1 for p, g in zip(predicted, gold) if p == g)
    table = contingency_table(predicted, gold, SENTENCE_CLASSES)
    return SupportMetrics(accuracy=matches / len(predicted), kappa=cohens_kappa(table))
