"""Entailment models served over the classify protocol.

A model maps (premise, hypothesis) pairs to softmax scores over
(SUPPORTS, REFUTES, NEUTRAL).  The separator convention lives here: the two
texts are joined into one token sequence divided by a separator token, and
tokens are embedded differently on each side of it.

The stub model is a tiny fixed-weight network over hashed bag-of-words
features.  It knows nothing about language; it exists so the service can be
deployed and protocol-tested without any pretrained weights.  A real model
is a drop-in replacement implementing ``predict``.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Protocol, Sequence

import numpy as np

LABELS = ("SUPPORTS", "REFUTES", "NEUTRAL")
SEPARATOR = "[SEP]"


class EntailmentModel(Protocol):
    def predict(self, pairs: Sequence[tuple[str, str]]) -> np.ndarray:
        """Scores of shape (len(pairs), 3), each row a distribution."""
        ...


def _token_index(token: str, segment: int, buckets: int) -> int:
    digest = hashlib.sha256(f"{segment}\x1f{token}".encode("utf-8")).digest()
    return int.from_bytes(digest[:4], "big") % buckets


class StubEntailmentModel:
    """Fixed-weight two-layer network over hashed token counts."""

    def __init__(self, seed: int = 0, buckets: int = 64, hidden: int = 16):
        rng = np.random.RandomState(seed)
        self.buckets = buckets
        self.w1 = rng.normal(scale=0.5, size=(buckets, hidden))
        self.b1 = rng.normal(scale=0.1, size=hidden)
        self.w2 = rng.normal(scale=0.5, size=(hidden, len(LABELS)))
        self.b2 = rng.normal(scale=0.1, size=len(LABELS))

    def _features(self, premise: str, hypothesis: str) -> np.ndarray:
        counts = np.zeros(self.buckets)
        # One sequence, separator between the texts; the segment id carries
        # which side of the separator a token fell on.
        for segment, text in enumerate((premise, SEPARATOR, hypothesis)):
            side = 0 if segment == 0 else 1
            for token in text.lower().split():
                counts[_token_index(token, side, self.buckets)] += 1.0
        norm = np.linalg.norm(counts)
        return counts / norm if norm > 0 else counts

    def predict(self, pairs: Sequence[tuple[str, str]]) -> np.ndarray:
        if not pairs:
            return np.zeros((0, len(LABELS)))
        features = np.stack([self._features(p, h) for p, h in pairs])
        hidden = np.tanh(features @ self.w1 + self.b1)
        logits = hidden @ self.w2 + self.b2
        logits -= logits.max(axis=1, keepdims=True)
        exp = np.exp(logits)
        return exp / exp.sum(axis=1, keepdims=True)


def load_model(artifact_path: str | Path | None, device: str = "cpu") -> EntailmentModel:
    """Load the model behind an artifact path.

    No path (or a "stub" artifact) yields the fixed-weight stub; the device
    argument is accepted for interface parity and ignored by the stub.
    """
    if artifact_path is None:
        return StubEntailmentModel()
    path = Path(artifact_path)
    with open(path, encoding="utf-8") as fp:
        spec = json.load(fp)
    kind = spec.get("kind", "stub")
    if kind == "stub":
        return StubEntailmentModel(
            seed=int(spec.get("seed", 0)),
            buckets=int(spec.get("buckets", 64)),
            hidden=int(spec.get("hidden", 16)),
        )
    raise ValueError(f"unsupported model kind: {kind!r}")
