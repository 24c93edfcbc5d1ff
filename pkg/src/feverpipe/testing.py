"""Protocol conformance checks for classify-service implementations.

Any service exposing POST /classify can be validated against the remote
client with ``check_remote_protocol``.  The checks cover response ordering,
client-side batching, score normalization, and (optionally) the rejection
of oversized batches; they need no gold data and no real model.
"""

from __future__ import annotations

from typing import Callable

from .entailment import PremisePair, RemoteClassifier, SentenceVerdict

_PAIRS = [
    PremisePair(premise=f"[Page {i}] Premise sentence number {i} .", hypothesis=f"Claim {i}.")
    for i in range(7)
]


def check_remote_protocol(
    endpoint: str,
    request_count: Callable[[], int] | None = None,
    oversize_batch: int | None = None,
) -> None:
    """Assert the service at ``endpoint`` honors the classify protocol.

    request_count, when given, must return how many wire requests the
    service has seen so far; it enables the batch-chunking check.
    oversize_batch, when given, must exceed the service's maximum batch
    size; the resulting non-200 response must surface as the client's
    NEUTRAL fallback rather than an exception.
    """
    client = RemoteClassifier(endpoint, batch_size=3, retry_backoff=0.0, max_retries=1)

    before = request_count() if request_count else None
    assert client.classify_batch([]) == [], "empty batch must not hit the wire"
    if request_count:
        assert request_count() == before, "empty batch must not hit the wire"

    batched = client.classify_batch(_PAIRS)
    assert len(batched) == len(_PAIRS), "response length must match request length"
    assert client.failure_count == 0, "healthy service must not trigger fallbacks"
    if request_count:
        sent = request_count() - before
        assert sent == 3, f"7 pairs at batch_size 3 must take 3 requests, took {sent}"

    for verdict in batched:
        assert isinstance(verdict, SentenceVerdict)
        assert abs(sum(verdict.scores) - 1.0) <= 1e-6
        assert all(s >= 0 for s in verdict.scores)
        assert verdict.score_for(verdict.label) == max(verdict.scores)

    # Each element matches the singleton classification of the same pair:
    # batching must be a pure chunking of the mapped function.  Scores are
    # compared with a small tolerance because a numerical backend may sum
    # differently across batch shapes.
    for pair, from_batch in zip(_PAIRS, batched):
        alone = client.classify(pair)
        assert alone.label == from_batch.label, "batching changed a label"
        assert all(
            abs(a - b) <= 1e-6 for a, b in zip(alone.scores, from_batch.scores)
        ), "batching changed the scores"

    if oversize_batch is not None:
        big_client = RemoteClassifier(
            endpoint,
            batch_size=oversize_batch,
            retry_backoff=0.0,
            max_retries=0,
        )
        pairs = [
            PremisePair(premise=f"p{i}", hypothesis=f"h{i}") for i in range(oversize_batch)
        ]
        verdicts = big_client.classify_batch(pairs)
        assert len(verdicts) == oversize_batch
        assert big_client.failure_count == oversize_batch, (
            "oversized batch must be rejected by the service and fall back to NEUTRAL"
        )
        assert all(v.label.value == "NEUTRAL" for v in verdicts)
