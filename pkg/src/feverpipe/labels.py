"""Label vocabularies shared across the pipeline.

Claims carry one of three verdicts; individual evidence sentences are
classified into a parallel three-way scheme where the no-signal class is
called NEUTRAL instead of NOT ENOUGH INFO.
"""

from __future__ import annotations

from enum import Enum


class ClaimLabel(str, Enum):
    """Claim-level verdict, serialized with the shared-task spellings."""

    SUPPORTS = "SUPPORTS"
    REFUTES = "REFUTES"
    NOT_ENOUGH_INFO = "NOT ENOUGH INFO"

    @classmethod
    def parse(cls, value: str) -> "ClaimLabel":
        normalized = value.strip().upper().replace("_", " ")
        for label in cls:
            if label.value == normalized:
                return label
        raise ValueError(f"unknown claim label: {value!r}")


class SentenceLabel(str, Enum):
    """Verdict for a single (premise, hypothesis) pair."""

    SUPPORTS = "SUPPORTS"
    REFUTES = "REFUTES"
    NEUTRAL = "NEUTRAL"

    @classmethod
    def parse(cls, value: str) -> "SentenceLabel":
        normalized = value.strip().upper()
        for label in cls:
            if label.value == normalized:
                return label
        raise ValueError(f"unknown sentence label: {value!r}")


def sentence_to_claim_label(label: SentenceLabel) -> ClaimLabel:
    if label is SentenceLabel.NEUTRAL:
        return ClaimLabel.NOT_ENOUGH_INFO
    return ClaimLabel(label.value)


def claim_to_sentence_label(label: ClaimLabel) -> SentenceLabel:
    if label is ClaimLabel.NOT_ENOUGH_INFO:
        return SentenceLabel.NEUTRAL
    return SentenceLabel(label.value)
