"""feverpipe-service: an entailment model server speaking the feverpipe
classify wire protocol."""

from .app import ModelEndpointConfig, create_app, serve
from .batching import MicroBatcher
from .model import LABELS, SEPARATOR, EntailmentModel, StubEntailmentModel, load_model

__version__ = "0.1.0"

__all__ = [
    "EntailmentModel",
    "LABELS",
    "MicroBatcher",
    "ModelEndpointConfig",
    "SEPARATOR",
    "StubEntailmentModel",
    "create_app",
    "load_model",
    "serve",
]
