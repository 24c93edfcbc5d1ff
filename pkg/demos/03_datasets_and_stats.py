"""Construct the per-sentence and concatenated entailment datasets.

Shows the labeling rules: a retrieved sentence inherits the claim's label
only when it sits in a singleton gold evidence group; claims whose gold
evidence needs several sentences at once are dropped entirely; the oracle
variant labels the concatenation with the claim's own label regardless of
what was retrieved.
"""

from feverpipe import Claim, ClaimLabel, EvidenceCandidate, build_five, build_one, class_stats
from feverpipe.corpus import display_title


def candidate(claim_id, page, line, sentence):
    return EvidenceCandidate(
        claim_id=claim_id,
        page=page,
        line=line,
        sentence=sentence,
        titled_premise=f"[{display_title(page)}] {sentence}",
    )


claims = [
    Claim(id=1, text="Ann Richards was a governor of Texas.",
          gold_label=ClaimLabel.SUPPORTS,
          evidence_groups=[frozenset({("Ann_Richards", 1)})]),
    Claim(id=2, text="The treaty needed two clauses read together.",
          gold_label=ClaimLabel.SUPPORTS,
          evidence_groups=[frozenset({("Treaty", 0), ("Treaty", 1)})]),
    Claim(id=3, text="Nothing in the corpus settles this.",
          gold_label=ClaimLabel.NOT_ENOUGH_INFO),
]

retrievals = {
    1: [
        candidate(1, "Ann_Richards", 0, "Ann Richards was a politician ."),
        candidate(1, "Ann_Richards", 1, "She was a governor of Texas ."),
        candidate(1, "Texas", 0, "Texas is a state ."),
    ],
    2: [candidate(2, "Treaty", 0, "The first clause is vague .")],
    3: [candidate(3, "Texas", 0, "Texas is a state .")],
}

one = build_one(claims, retrievals, titled=True)
print("per-sentence examples (titled):")
for example in one:
    print(f"  {example.label.value:8}  {example.premise}")
print("claim 2 was dropped: its gold evidence needs two sentences at once.")
print()

five = build_five(claims, retrievals, oracle=False, titled=False)
five_oracle = build_five(claims, retrievals, oracle=True, titled=False)
for plain, oracle in zip(five, five_oracle):
    print(f"claim {plain.claim_id}: retrieved-membership label={plain.label.value}, "
          f"oracle label={oracle.label.value}")
print()

# The label distribution is heavily skewed toward NEUTRAL, which is why
# evaluation leans on Cohen's Kappa; the weights rebalance a training loss.
stats = class_stats(one)
print(f"counts: { {k.value: v for k, v in stats.counts.items()} }")
print(f"majority accuracy: {stats.majority_accuracy:.3f}")
print(f"weights: { {k.value: round(v, 3) for k, v in stats.weights.items()} }")
