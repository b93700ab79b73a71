"""EvalReport schema shared with the primary pipeline.

Field names and types replicate the primary's report JSON exactly, so the
two report families are interchangeable for downstream tooling.  The
schema below is the frozen contract; reports are validated against it
before being written.
"""

from __future__ import annotations

import json
from pathlib import Path

import jsonschema

EVAL_REPORT_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": [
        "model",
        "kind",
        "seed",
        "params",
        "train_time_sec",
        "n_test",
        "accuracy",
        "precision",
        "recall",
        "f1",
        "roc_auc",
        "confusion",
        "warnings",
    ],
    "properties": {
        "model": {"type": "string"},
        "kind": {"type": "string"},
        "seed": {"type": "integer"},
        "params": {"type": "object"},
        "train_time_sec": {"type": ["number", "null"]},
        "n_test": {"type": "integer", "minimum": 0},
        "accuracy": {"type": "number", "minimum": 0, "maximum": 1},
        "precision": {"type": "number", "minimum": 0, "maximum": 1},
        "recall": {"type": "number", "minimum": 0, "maximum": 1},
        "f1": {"type": "number", "minimum": 0, "maximum": 1},
        "roc_auc": {"type": ["number", "null"], "minimum": 0, "maximum": 1},
        "confusion": {
            "type": "object",
            "additionalProperties": False,
            "required": ["tp", "fp", "tn", "fn"],
            "properties": {
                "tp": {"type": "integer", "minimum": 0},
                "fp": {"type": "integer", "minimum": 0},
                "tn": {"type": "integer", "minimum": 0},
                "fn": {"type": "integer", "minimum": 0},
            },
        },
        "warnings": {"type": "array", "items": {"type": "string"}},
    },
}


def validate_report(report: dict) -> None:
    jsonschema.validate(report, EVAL_REPORT_SCHEMA)


def write_report(report: dict, path) -> None:
    validate_report(report)
    Path(path).write_text(json.dumps(report, indent=2), encoding="utf-8")
