"""Claim records and the shared-task JSONL reader.

Evidence comes as groups of (page, line) references; any one complete group
justifies the gold label.  NOT ENOUGH INFO claims have no usable groups
(their evidence entries carry null pages).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .labels import ClaimLabel

EvidencePair = tuple[str, int]
EvidenceGroup = frozenset[EvidencePair]


@dataclass
class Claim:
    id: int
    text: str
    gold_label: ClaimLabel | None = None
    evidence_groups: list[EvidenceGroup] = field(default_factory=list)

    @property
    def is_verifiable(self) -> bool:
        return self.gold_label in (ClaimLabel.SUPPORTS, ClaimLabel.REFUTES)

    def singleton_groups(self) -> list[EvidenceGroup]:
        return [group for group in self.evidence_groups if len(group) == 1]

    def has_multi_sentence_group(self) -> bool:
        return any(len(group) > 1 for group in self.evidence_groups)

    def all_evidence_pairs(self) -> set[EvidencePair]:
        pairs: set[EvidencePair] = set()
        for group in self.evidence_groups:
            pairs.update(group)
        return pairs


def parse_claim(record: dict) -> Claim:
    """Decode one claim record.

    Accepts both the full evidence entry form [annotation_id, evidence_id,
    page, line] and the abbreviated [page, line] form; entries with a null
    page mark unverifiable claims and are dropped.
    """
    label = None
    if record.get("label") is not None:
        label = ClaimLabel.parse(record["label"])

    groups: list[EvidenceGroup] = []
    for group in record.get("evidence", []):
        pairs: set[EvidencePair] = set()
        for entry in group:
            if len(entry) == 2:
                page, line = entry
            else:
                page, line = entry[2], entry[3]
            if page is None or line is None:
                continue
            pairs.add((str(page), int(line)))
        if pairs:
            groups.append(frozenset(pairs))

    return Claim(
        id=int(record["id"]),
        text=record["claim"],
        gold_label=label,
        evidence_groups=groups,
    )


def load_claims(path: str | Path) -> list[Claim]:
    claims: list[Claim] = []
    with open(path, encoding="utf-8") as fp:
        for line in fp:
            if line.strip():
                claims.append(parse_claim(json.loads(line)))
    return claims


def claims_by_id(claims: Iterable[Claim]) -> dict[int, Claim]:
    by_id: dict[int, Claim] = {}
    for claim in claims:
        if claim.id in by_id:
            raise ValueError(f"duplicate claim id: {claim.id}")
        by_id[claim.id] = claim
    return by_id
