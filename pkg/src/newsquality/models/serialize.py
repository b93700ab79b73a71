"""Portable JSON envelope for fitted models.

Layout::

    {
      "format_version": 1,
      "kind": "<model kind>",
      "params": {... constructor parameters, seed included ...},
      "train_time_sec": <float or null>,
      "n_features_in": <int>,
      "state": {... kind-specific, arrays as binary blocks ...}
    }

Numeric arrays are encoded as ``{"__ndarray__": {dtype, shape, data}}``
with ``data`` the base64 of the little-endian bytes ("<f8" or "<i8"), so
reloaded models predict bit-identically on any platform.  ``train_time_sec``
is wall-clock metadata and is the one field excluded from determinism
comparisons.
"""

from __future__ import annotations

import base64
import json
from pathlib import Path

import numpy as np

FORMAT_VERSION = 1

_DTYPES = {"<f8": np.dtype("<f8"), "<i8": np.dtype("<i8")}


def encode_array(arr: np.ndarray) -> dict:
    arr = np.asarray(arr)
    if arr.dtype.kind == "f":
        arr = arr.astype("<f8")
        dtype = "<f8"
    elif arr.dtype.kind in ("i", "u", "b"):
        arr = arr.astype("<i8")
        dtype = "<i8"
    else:
        raise TypeError(f"cannot encode array of dtype {arr.dtype}")
    return {
        "__ndarray__": {
            "dtype": dtype,
            "shape": list(arr.shape),
            "data": base64.b64encode(np.ascontiguousarray(arr).tobytes()).decode("ascii"),
        }
    }


def decode_array(block: dict) -> np.ndarray:
    meta = block["__ndarray__"]
    dtype = _DTYPES[meta["dtype"]]
    raw = base64.b64decode(meta["data"])
    return np.frombuffer(raw, dtype=dtype).reshape(meta["shape"]).copy()


def _encode_value(value):
    if isinstance(value, np.ndarray):
        return encode_array(value)
    if isinstance(value, dict):
        return {k: _encode_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_encode_value(v) for v in value]
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    return value


def _decode_value(value):
    if isinstance(value, dict):
        if "__ndarray__" in value:
            return decode_array(value)
        return {k: _decode_value(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_decode_value(v) for v in value]
    return value


def _jsonable_params(params: dict) -> dict:
    out = {}
    for key, value in params.items():
        if isinstance(value, tuple):
            value = list(value)
        out[key] = value
    return out


def model_to_envelope(model) -> dict:
    if getattr(model, "n_features_in_", None) is None:
        raise ValueError("cannot serialize an unfitted model")
    return {
        "format_version": FORMAT_VERSION,
        "kind": model.kind,
        "params": _jsonable_params(model.get_params()),
        "train_time_sec": getattr(model, "train_time_sec_", None),
        "n_features_in": int(model.n_features_in_),
        "state": _encode_value(model._get_state()),
    }


def model_to_json(model, *, indent=None) -> str:
    return json.dumps(model_to_envelope(model), indent=indent)


def model_from_envelope(envelope: dict):
    from .registry import class_for_kind

    if envelope.get("format_version") != FORMAT_VERSION:
        raise ValueError(f"unsupported format_version {envelope.get('format_version')}")
    cls = class_for_kind(envelope["kind"])
    params = dict(envelope["params"])
    # tuples (e.g. hidden layer sizes) arrive as lists from JSON
    model = cls(**{k: tuple(v) if isinstance(v, list) else v for k, v in params.items()})
    model.n_features_in_ = envelope["n_features_in"]
    model.train_time_sec_ = envelope.get("train_time_sec")
    model._set_state(_decode_value(envelope["state"]))
    return model


def model_from_json(text: str):
    return model_from_envelope(json.loads(text))


def save_model(model, path) -> None:
    Path(path).write_text(model_to_json(model), encoding="utf-8")


def load_model(path):
    return model_from_json(Path(path).read_text(encoding="utf-8"))


def deterministic_digest(model) -> str:
    """Canonical JSON of everything that defines what the model computes.

    Wall-clock training time and the ``n_jobs`` parallelism hint are
    execution metadata, not model identity, so they are excluded.
    """
    envelope = model_to_envelope(model)
    envelope.pop("train_time_sec", None)
    envelope["params"].pop("n_jobs", None)
    return json.dumps(envelope, sort_keys=True)
