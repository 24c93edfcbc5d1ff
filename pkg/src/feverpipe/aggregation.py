"""Combine per-sentence verdicts into claim-level submissions.

Any supporting sentence decides the claim (conflicts resolve in favor of
support, since contradictions may come from a different entity with the
same name); otherwise any refuting sentence does; otherwise the claim has
not enough information.  Only sentences whose verdict matches the chosen
label are submitted as evidence, and NEUTRAL sentences are never submitted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .entailment import SentenceVerdict
from .labels import ClaimLabel, SentenceLabel, claim_to_sentence_label
from .retrieval import EvidenceCandidate

ClassifiedCandidate = tuple[EvidenceCandidate, SentenceVerdict]


@dataclass
class Submission:
    claim_id: int
    predicted_label: ClaimLabel
    predicted_evidence: list[tuple[str, int]] = field(default_factory=list)

    def to_record(self) -> dict:
        return {
            "id": self.claim_id,
            "predicted_label": self.predicted_label.value,
            "predicted_evidence": [[page, line] for page, line in self.predicted_evidence],
        }

    @classmethod
    def from_record(cls, record: dict) -> "Submission":
        return cls(
            claim_id=int(record["id"]),
            predicted_label=ClaimLabel.parse(record["predicted_label"]),
            predicted_evidence=[
                (page, int(line)) for page, line in record.get("predicted_evidence", [])
            ],
        )


def aggregate(
    claim_id: int,
    classified: Sequence[ClassifiedCandidate],
    max_evidence: int | None = None,
) -> Submission:
    """Aggregate one claim's verdicts into a submission.

    Evidence is ordered by descending verdict score for the chosen label,
    then by (page, line), and truncated to max_evidence when set.  An empty
    verdict list yields NOT ENOUGH INFO.
    """
    for candidate, _ in classified:
        if candidate.claim_id != claim_id:
            raise ValueError(
                f"candidate for claim {candidate.claim_id} in group for claim {claim_id}"
            )

    labels = {verdict.label for _, verdict in classified}
    if SentenceLabel.SUPPORTS in labels:
        label = ClaimLabel.SUPPORTS
    elif SentenceLabel.REFUTES in labels:
        label = ClaimLabel.REFUTES
    else:
        label = ClaimLabel.NOT_ENOUGH_INFO

    evidence: list[tuple[str, int]] = []
    if label is not ClaimLabel.NOT_ENOUGH_INFO:
        sentence_label = claim_to_sentence_label(label)
        matching = [
            (candidate, verdict)
            for candidate, verdict in classified
            if verdict.label is sentence_label
        ]
        matching.sort(
            key=lambda pair: (
                -pair[1].score_for(sentence_label),
                pair[0].page,
                pair[0].line,
            )
        )
        seen: set[tuple[str, int]] = set()
        for candidate, _ in matching:
            pair = (candidate.page, candidate.line)
            if pair not in seen:
                seen.add(pair)
                evidence.append(pair)
        if max_evidence is not None:
            evidence = evidence[:max_evidence]

    return Submission(claim_id=claim_id, predicted_label=label, predicted_evidence=evidence)


def aggregate_all(
    classified: Iterable[ClassifiedCandidate],
    claim_ids: Iterable[int] | None = None,
    max_evidence: int | None = None,
) -> list[Submission]:
    """One submission per claim, ordered by claim id.

    claim_ids extends the output to claims with zero classified candidates
    (typically every claim in the retrieval output).
    """
    grouped: dict[int, list[ClassifiedCandidate]] = {}
    for candidate, verdict in classified:
        grouped.setdefault(candidate.claim_id, []).append((candidate, verdict))

    ids = set(grouped)
    if claim_ids is not None:
        ids.update(claim_ids)

    return [
        aggregate(claim_id, grouped.get(claim_id, []), max_evidence=max_evidence)
        for claim_id in sorted(ids)
    ]


def write_submissions(path: str | Path, submissions: Iterable[Submission]) -> None:
    with open(path, "w", encoding="utf-8") as fp:
        for submission in submissions:
            fp.write(json.dumps(submission.to_record(), ensure_ascii=False) + "\n")


def read_submissions(path: str | Path) -> list[Submission]:
    submissions: list[Submission] = []
    with open(path, encoding="utf-8") as fp:
        for line in fp:
            if line.strip():
                submissions.append(Submission.from_record(json.loads(line)))
    return submissions
