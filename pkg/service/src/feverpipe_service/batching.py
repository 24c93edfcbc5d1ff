"""Micro-batching across concurrent requests.

Incoming requests queue their pair lists; a single worker drains the queue,
runs the model once over the concatenated pairs (up to the batch budget),
and slices the scores back out per request.  Each response preserves its
request's pair order, and requests are answered in arrival order.
"""

from __future__ import annotations

import asyncio
from typing import Sequence

import numpy as np

from .model import EntailmentModel


class MicroBatcher:
    def __init__(self, model: EntailmentModel, max_batch_size: int):
        self.model = model
        self.max_batch_size = max(1, max_batch_size)
        self.batches_run = 0
        self._queue: asyncio.Queue = asyncio.Queue()
        self._worker: asyncio.Task | None = None

    async def start(self) -> None:
        if self._worker is None:
            self._worker = asyncio.create_task(self._run())

    async def stop(self) -> None:
        if self._worker is not None:
            self._worker.cancel()
            try:
                await self._worker
            except asyncio.CancelledError:
                pass
            self._worker = None

    async def submit(self, pairs: Sequence[tuple[str, str]]) -> np.ndarray:
        if not pairs:
            return np.zeros((0, 3))
        future: asyncio.Future = asyncio.get_running_loop().create_future()
        await self._queue.put((list(pairs), future))
        return await future

    async def _run(self) -> None:
        while True:
            first_pairs, first_future = await self._queue.get()
            jobs = [(first_pairs, first_future)]
            total = len(first_pairs)
            # Merge whatever is already waiting, up to the batch budget.
            while total < self.max_batch_size and not self._queue.empty():
                pairs, future = self._queue.get_nowait()
                jobs.append((pairs, future))
                total += len(pairs)

            flat = [pair for pairs, _ in jobs for pair in pairs]
            self.batches_run += 1
            try:
                scores = await asyncio.to_thread(self.model.predict, flat)
            except Exception as exc:  # propagate to every waiting request
                for _, future in jobs:
                    if not future.done():
                        future.set_exception(exc)
                continue

            offset = 0
            for pairs, future in jobs:
                chunk = scores[offset : offset + len(pairs)]
                offset += len(pairs)
                if not future.done():
                    future.set_result(chunk)
