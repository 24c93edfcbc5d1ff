"""HTTP surface: POST /classify and GET /health.

The wire protocol matches the pipeline's remote classifier: a request is
{"pairs": [{"premise": ..., "hypothesis": ...}, ...]} and the response is
{"verdicts": [{"label": ..., "scores": [pS, pR, pN]}, ...]} of equal length
and order.  Malformed requests get 400; batches beyond the configured
maximum get 413 with the maximum in the body.
"""

from __future__ import annotations

import argparse
import logging
from contextlib import asynccontextmanager
from dataclasses import dataclass

import numpy as np
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .batching import MicroBatcher
from .model import LABELS, load_model

logger = logging.getLogger(__name__)

# Tie order matches the client: SUPPORTS beats REFUTES beats NEUTRAL.
_TIE_PRIORITY = (2, 1, 0)


@dataclass
class ModelEndpointConfig:
    host: str = "127.0.0.1"
    port: int = 8401
    model_path: str | None = None
    max_batch_size: int = 64
    device: str = "cpu"


class PairIn(BaseModel):
    premise: str
    hypothesis: str


class ClassifyRequest(BaseModel):
    pairs: list[PairIn]


def _verdict(scores: np.ndarray) -> dict:
    best = max(range(len(LABELS)), key=lambda i: (scores[i], _TIE_PRIORITY[i]))
    return {"label": LABELS[best], "scores": [float(s) for s in scores]}


def create_app(config: ModelEndpointConfig | None = None) -> FastAPI:
    config = config or ModelEndpointConfig()
    # The model loads before the server binds, so a successful health probe
    # implies classification traffic can be served.
    model = load_model(config.model_path, device=config.device)
    batcher = MicroBatcher(model, config.max_batch_size)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        await batcher.start()
        yield
        await batcher.stop()

    app = FastAPI(title="feverpipe entailment service", lifespan=lifespan)
    app.state.config = config
    app.state.classify_requests = 0

    @app.exception_handler(RequestValidationError)
    async def malformed_request(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": "malformed request"})

    @app.get("/health")
    async def health():
        return {"status": "ok", "max_batch_size": config.max_batch_size}

    @app.post("/classify")
    async def classify(request: ClassifyRequest):
        app.state.classify_requests += 1
        if len(request.pairs) > config.max_batch_size:
            return JSONResponse(
                status_code=413,
                content={
                    "error": "batch too large",
                    "max_batch_size": config.max_batch_size,
                },
            )
        pairs = [(p.premise, p.hypothesis) for p in request.pairs]
        scores = await batcher.submit(pairs)
        return {"verdicts": [_verdict(row) for row in scores]}

    return app


def serve(config: ModelEndpointConfig) -> None:
    import uvicorn

    uvicorn.run(create_app(config), host=config.host, port=config.port, log_level="info")


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="feverpipe-service",
        description="Serve an entailment model over the classify protocol.",
    )
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8401)
    parser.add_argument("--model", default=None, help="model artifact path (default: stub)")
    parser.add_argument("--max-batch-size", type=int, default=64)
    parser.add_argument("--device", default="cpu")
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO)
    serve(
        ModelEndpointConfig(
            host=args.host,
            port=args.port,
            model_path=args.model,
            max_batch_size=args.max_batch_size,
            device=args.device,
        )
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
