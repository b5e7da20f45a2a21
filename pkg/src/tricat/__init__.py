"""Finite models of triangulated categories with resolution-dimension tooling."""

import json
from importlib import resources

from .extnat import INF, ExtNat
from .model import ModelSpec, ObjClass, UniverseSpec, load_model, model_from_json

__version__ = "0.1.0"

BUNDLED = ("semisimple", "derived_A2", "cluster_A2")


def bundled_model(name: str) -> ModelSpec:
    """Load one of the models shipped in ``tricat/data``."""
    if name not in BUNDLED:
        raise KeyError(f"unknown bundled model {name!r}; choose from {', '.join(BUNDLED)}")
    text = resources.files(__name__).joinpath("data", f"{name}.json").read_text()
    return model_from_json(json.loads(text))


__all__ = ["INF", "ExtNat", "ModelSpec", "ObjClass", "UniverseSpec", "load_model",
           "model_from_json", "bundled_model", "BUNDLED", "__version__"]
