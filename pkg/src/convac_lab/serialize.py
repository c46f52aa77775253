"""Structured-text (JSON) round-tripping of tensors, factors, and models.

Arrays are stored as ``{"shape": [...], "data": [flat numbers]}`` in
row-major order. Floats are written in Python's shortest round-trip
representation, so save/load reproduces every double bit-for-bit; documents
are dumped with sorted keys so identical objects serialize to identical
bytes.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .models import ComponentBank, CpModel, HtModel
from .tensors import CpFactors, HtFactors


def _array_doc(arr: np.ndarray) -> dict:
    arr = np.asarray(arr, dtype=np.float64)
    return {"shape": list(arr.shape), "data": [float(v) for v in arr.ravel()]}


def _array_from(doc: dict) -> np.ndarray:
    arr = np.array(doc["data"], dtype=np.float64)
    return arr.reshape(doc["shape"])


def to_document(obj: Any) -> dict:
    """JSON-ready document for a tensor (ndarray), factors, or model."""
    if isinstance(obj, np.ndarray):
        return {"kind": "tensor", **_array_doc(obj)}
    if isinstance(obj, CpFactors):
        return {
            "kind": "cp_factors",
            "probabilistic": obj.probabilistic,
            "top": _array_doc(obj.top),
            "site": _array_doc(obj.site),
        }
    if isinstance(obj, HtFactors):
        return {
            "kind": "ht_factors",
            "probabilistic": obj.probabilistic,
            "levels": [_array_doc(m) for m in obj.levels],
            "top": _array_doc(obj.top),
        }
    if isinstance(obj, CpModel):
        return {
            "kind": "cp_model",
            "seed": obj.seed,
            "bank": _array_doc(obj.bank.table),
            "factors": to_document(obj.factors),
            "component_prior": (
                None if obj.component_prior is None else _array_doc(obj.component_prior)
            ),
        }
    if isinstance(obj, HtModel):
        return {
            "kind": "ht_model",
            "seed": obj.seed,
            "bank": _array_doc(obj.bank.table),
            "factors": to_document(obj.factors),
            "latent_priors": (
                None
                if obj.latent_priors is None
                else [_array_doc(p) for p in obj.latent_priors]
            ),
        }
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def from_document(doc: dict) -> Any:
    kind = doc.get("kind")
    if kind == "tensor":
        return _array_from(doc)
    if kind == "cp_factors":
        return CpFactors(
            top=_array_from(doc["top"]),
            site=_array_from(doc["site"]),
            probabilistic=doc["probabilistic"],
        )
    if kind == "ht_factors":
        return HtFactors(
            levels=tuple(_array_from(m) for m in doc["levels"]),
            top=_array_from(doc["top"]),
            probabilistic=doc["probabilistic"],
        )
    if kind == "cp_model":
        return CpModel(
            bank=ComponentBank(_array_from(doc["bank"])),
            factors=from_document(doc["factors"]),
            component_prior=(
                None
                if doc.get("component_prior") is None
                else _array_from(doc["component_prior"])
            ),
            seed=doc.get("seed"),
        )
    if kind == "ht_model":
        return HtModel(
            bank=ComponentBank(_array_from(doc["bank"])),
            factors=from_document(doc["factors"]),
            latent_priors=(
                None
                if doc.get("latent_priors") is None
                else tuple(_array_from(p) for p in doc["latent_priors"])
            ),
            seed=doc.get("seed"),
        )
    raise ValueError(f"unknown document kind {kind!r}")


def dumps(obj: Any) -> str:
    return json.dumps(to_document(obj), indent=2, sort_keys=True, allow_nan=False) + "\n"


def save(obj: Any, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(obj))


def load(path) -> Any:
    with open(path) as fh:
        return from_document(json.load(fh))
