"""Classify evidence sentences, aggregate verdicts, and score submissions.

The aggregation rules: any supporting sentence decides the claim; refuting
evidence wins only when nothing supports; conflicts resolve in favor of
support (the contradiction may describe a different entity with the same
name).  Only sentences matching the final label are submitted as evidence.
"""

import numpy as np

from feverpipe import (
    Claim,
    ClaimLabel,
    EvidenceCandidate,
    LexicalClassifier,
    OracleClassifier,
    PremisePair,
    aggregate,
    cohens_kappa,
    fever_score,
)
from feverpipe.corpus import display_title

clf = LexicalClassifier()
pairs = [
    PremisePair(premise="[Texas] Ann Richards was a governor of Texas .",
                hypothesis="Ann Richards was a governor of Texas."),
    PremisePair(premise="[Texas] Ann Richards was a governor of Texas .",
                hypothesis="Ann Richards was never a governor of Texas."),
    PremisePair(premise="[Solaris] The novel describes an ocean planet .",
                hypothesis="Ann Richards was a governor of Texas."),
]
print("lexical heuristic verdicts:")
for pair, verdict in zip(pairs, clf.classify_batch(pairs)):
    print(f"  {verdict.label.value:8}  scores={verdict.scores}  <- {pair.hypothesis}")
print()


def candidate(page, line):
    return EvidenceCandidate(
        claim_id=1, page=page, line=line,
        sentence=f"{page} line {line} .",
        titled_premise=f"[{display_title(page)}] {page} line {line} .",
    )


# The Ann Richards scenario: a supporting sentence about the politician and
# a refuting one about the actress of the same name.
gold = Claim(id=1, text="Ann Richards was a governor of Texas.",
             gold_label=ClaimLabel.SUPPORTS,
             evidence_groups=[frozenset({("Ann_Richards", 1)})])
oracle = OracleClassifier([gold])
classified = []
for page, line in [("Ann_Richards", 1), ("Ann_Richards_-LRB-actress-RRB-", 0), ("Texas", 0)]:
    cand = candidate(page, line)
    verdict = oracle.classify(PremisePair(
        premise=cand.titled_premise, hypothesis=gold.text,
        claim_id=1, page=page, line=line,
    ))
    classified.append((cand, verdict))

submission = aggregate(1, classified)
print(f"aggregated label: {submission.predicted_label.value}")
print(f"submitted evidence: {submission.predicted_evidence}")
print()

report = fever_score([submission], [gold])
print(f"fever score {report.fever_score:.2f}, label accuracy {report.label_accuracy:.2f}, "
      f"evidence f1 {report.evidence_f1:.2f}")
print()

# Kappa corrects agreement for chance: a majority-class predictor on a 93%
# NEUTRAL distribution gets high accuracy but zero kappa.
table = np.array([[0, 0, 0], [0, 0, 0], [93, 4, 3]])
print(f"majority predictor kappa: {cohens_kappa(table)}")
print(f"perfect agreement kappa:  {cohens_kappa(np.diag([93, 4, 3]))}")
