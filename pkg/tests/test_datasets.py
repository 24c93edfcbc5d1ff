import pytest

from feverpipe.claims import Claim
from feverpipe.corpus import display_title
from feverpipe.datasets import (
    build_five,
    build_one,
    class_stats,
    read_examples,
    write_examples,
)
from feverpipe.labels import ClaimLabel, SentenceLabel
from feverpipe.retrieval import EvidenceCandidate


def cand(claim_id, page, line, sentence):
    return EvidenceCandidate(
        claim_id=claim_id,
        page=page,
        line=line,
        sentence=sentence,
        titled_premise=f"[{display_title(page)}] {sentence}",
    )


def supports_claim():
    return Claim(
        id=1,
        text="Ann Richards was a governor of Texas.",
        gold_label=ClaimLabel.SUPPORTS,
        evidence_groups=[frozenset({("Ann_Richards", 1)})],
    )


def five_candidates(claim_id=1):
    return [
        cand(claim_id, "Ann_Richards", 0, "Ann Richards was a politician ."),
        cand(claim_id, "Ann_Richards", 1, "She was a governor of Texas ."),
        cand(claim_id, "Texas", 0, "Texas is a state ."),
        cand(claim_id, "Texas", 1, "Many governors live there ."),
        cand(claim_id, "Decoy_One", 0, "governor state event ."),
    ]


class TestBuildOne:
    def test_gold_candidate_keeps_claim_label(self):
        examples = build_one([supports_claim()], {1: five_candidates()})
        assert len(examples) == 5
        labels = {(e.evidence[0]): e.label for e in examples}
        assert labels[("Ann_Richards", 1)] is SentenceLabel.SUPPORTS
        neutral = [pair for pair, label in labels.items() if label is SentenceLabel.NEUTRAL]
        assert len(neutral) == 4

    def test_multi_sentence_group_drops_claim(self):
        claim = Claim(
            id=2,
            text="Needs two sentences.",
            gold_label=ClaimLabel.SUPPORTS,
            evidence_groups=[frozenset({("A", 0), ("A", 1)})],
        )
        assert build_one([claim], {2: five_candidates(2)}) == []

    def test_claim_with_singleton_and_multi_group_also_dropped(self):
        claim = Claim(
            id=3,
            text="Mixed groups.",
            gold_label=ClaimLabel.REFUTES,
            evidence_groups=[
                frozenset({("A", 0)}),
                frozenset({("B", 0), ("B", 1)}),
            ],
        )
        assert build_one([claim], {3: five_candidates(3)}) == []

    def test_nei_claim_yields_all_neutral(self):
        claim = Claim(id=4, text="Unknown thing.", gold_label=ClaimLabel.NOT_ENOUGH_INFO)
        examples = build_one([claim], {4: five_candidates(4)})
        assert len(examples) == 5
        assert all(e.label is SentenceLabel.NEUTRAL for e in examples)

    def test_gold_membership_requires_singleton_group(self):
        # NEI claims never label sentences; neither do multi-sentence groups
        # (those claims are dropped), so only singleton membership matters.
        claim = Claim(
            id=5,
            text="Refuted by line 0.",
            gold_label=ClaimLabel.REFUTES,
            evidence_groups=[frozenset({("Texas", 0)})],
        )
        examples = build_one([claim], {5: five_candidates(5)})
        by_pair = {e.evidence[0]: e.label for e in examples}
        assert by_pair[("Texas", 0)] is SentenceLabel.REFUTES
        assert by_pair[("Ann_Richards", 1)] is SentenceLabel.NEUTRAL

    def test_titled_variant_differs_only_in_premise_prefix(self):
        plain = build_one([supports_claim()], {1: five_candidates()}, titled=False)
        titled = build_one([supports_claim()], {1: five_candidates()}, titled=True)
        assert len(plain) == len(titled)
        for p, t in zip(plain, titled):
            assert (p.label, p.claim_id, p.evidence, p.hypothesis) == (
                t.label, t.claim_id, t.evidence, t.hypothesis,
            )
            page = t.evidence[0][0]
            assert t.premise == f"[{display_title(page)}] {p.premise}"

    def test_output_sorted_by_claim_page_line(self):
        claims = [supports_claim(), Claim(id=0, text="x", gold_label=ClaimLabel.NOT_ENOUGH_INFO)]
        retrievals = {1: five_candidates(1), 0: list(reversed(five_candidates(0)))}
        examples = build_one(claims, retrievals)
        keys = [(e.claim_id, e.evidence[0]) for e in examples]
        assert keys == sorted(keys)


class TestBuildFive:
    def test_oracle_label_is_claim_label_even_without_gold_retrieved(self):
        claim = Claim(
            id=6,
            text="Refuted claim.",
            gold_label=ClaimLabel.REFUTES,
            evidence_groups=[frozenset({("Missing_Page", 0)})],
        )
        examples = build_five([claim], {6: five_candidates(6)}, oracle=True)
        assert len(examples) == 1
        assert examples[0].label is SentenceLabel.REFUTES

    def test_non_oracle_needs_retrieved_gold(self):
        claim = Claim(
            id=6,
            text="Refuted claim.",
            gold_label=ClaimLabel.REFUTES,
            evidence_groups=[frozenset({("Missing_Page", 0)})],
        )
        examples = build_five([claim], {6: five_candidates(6)}, oracle=False)
        assert examples[0].label is SentenceLabel.NEUTRAL

    def test_premise_concatenates_in_retrieval_order(self):
        candidates = five_candidates()[:3]
        examples = build_five([supports_claim()], {1: candidates})
        assert examples[0].premise == " ".join(c.sentence for c in candidates)
        assert examples[0].evidence == tuple((c.page, c.line) for c in candidates)

    def test_oracle_nei_maps_to_neutral(self):
        claim = Claim(id=7, text="Unknown.", gold_label=ClaimLabel.NOT_ENOUGH_INFO)
        examples = build_five([claim], {7: five_candidates(7)}, oracle=True)
        assert examples[0].label is SentenceLabel.NEUTRAL

    def test_one_example_per_retained_claim(self):
        claims = [
            supports_claim(),
            Claim(id=2, text="multi", gold_label=ClaimLabel.SUPPORTS,
                  evidence_groups=[frozenset({("A", 0), ("A", 1)})]),
            Claim(id=3, text="nei", gold_label=ClaimLabel.NOT_ENOUGH_INFO),
        ]
        retrievals = {1: five_candidates(1), 2: five_candidates(2), 3: []}
        examples = build_five(claims, retrievals)
        assert [e.claim_id for e in examples] == [1, 3]
        assert examples[1].premise == ""


class TestClassStats:
    def test_majority_accuracy_mirrors_imbalance(self):
        examples = (
            [_example(SentenceLabel.NEUTRAL)] * 930
            + [_example(SentenceLabel.SUPPORTS)] * 40
            + [_example(SentenceLabel.REFUTES)] * 30
        )
        stats = class_stats(examples)
        assert stats.majority_label is SentenceLabel.NEUTRAL
        assert abs(stats.majority_accuracy - 0.930) < 1e-12

    def test_balanced_weights_are_one(self):
        examples = [
            _example(SentenceLabel.NEUTRAL),
            _example(SentenceLabel.SUPPORTS),
            _example(SentenceLabel.REFUTES),
        ] * 4
        stats = class_stats(examples)
        assert all(abs(w - 1.0) < 1e-12 for w in stats.weights.values())

    def test_two_class_weights(self):
        examples = [_example(SentenceLabel.NEUTRAL)] * 8 + [_example(SentenceLabel.SUPPORTS)] * 2
        stats = class_stats(examples)
        assert abs(stats.weights[SentenceLabel.NEUTRAL] - 0.625) < 1e-12
        assert abs(stats.weights[SentenceLabel.SUPPORTS] - 2.5) < 1e-12

    def test_weighted_class_mass_equal(self):
        examples = (
            [_example(SentenceLabel.NEUTRAL)] * 17
            + [_example(SentenceLabel.SUPPORTS)] * 5
            + [_example(SentenceLabel.REFUTES)] * 3
        )
        stats = class_stats(examples)
        masses = {
            label: stats.weights[label] * stats.counts[label] for label in stats.counts
        }
        values = list(masses.values())
        assert all(abs(v - values[0]) < 1e-9 for v in values)

    def test_empty_input_is_an_error(self):
        with pytest.raises(ValueError):
            class_stats([])


def _example(label):
    from feverpipe.datasets import EntailmentExample

    return EntailmentExample(
        premise="p", hypothesis="h", label=label, claim_id=0, evidence=(("P", 0),)
    )


def test_jsonl_roundtrip(tmp_path):
    examples = build_one([supports_claim()], {1: five_candidates()}, titled=True)
    path = tmp_path / "one.jsonl"
    write_examples(path, examples)
    assert read_examples(path) == examples
