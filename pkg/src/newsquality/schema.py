"""Feature schema: ordered, named feature columns grouped into categories.

Four categories arrive as precomputed tagger counts (part-of-speech,
treebank tags, syntactic dependencies, named entities); the ``numeric``
category holds surface measures computed from the link text itself.  The
column order is fixed for the life of a dataset: matrices, sparsity
reports, and scaler parameters all index into it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

CATEGORIES = ("pos", "penn_treebank", "dependency", "ner", "numeric")


@dataclass(frozen=True)
class FeatureColumn:
    name: str
    category: str


class FeatureSchema:
    """Immutable ordered list of feature columns with unique names."""

    def __init__(self, columns):
        cols = tuple(
            c if isinstance(c, FeatureColumn) else FeatureColumn(*c) for c in columns
        )
        names = [c.name for c in cols]
        if len(set(names)) != len(names):
            raise ValueError("feature names must be unique")
        for c in cols:
            if c.category not in CATEGORIES:
                raise ValueError(
                    f"unknown category {c.category!r} for feature {c.name!r}; "
                    f"expected one of {CATEGORIES}"
                )
            if not c.name:
                raise ValueError("feature names must be nonempty")
        self._columns = cols
        self._names = tuple(names)

    @property
    def columns(self) -> tuple[FeatureColumn, ...]:
        return self._columns

    @property
    def names(self) -> tuple[str, ...]:
        return self._names

    def __len__(self) -> int:
        return len(self._columns)

    def __iter__(self):
        return iter(self._columns)

    def __eq__(self, other) -> bool:
        return isinstance(other, FeatureSchema) and self._columns == other._columns

    def indices_for_category(self, category: str) -> list[int]:
        if category not in CATEGORIES:
            raise ValueError(f"unknown category {category!r}")
        return [i for i, c in enumerate(self._columns) if c.category == category]

    def to_json(self) -> str:
        return json.dumps(
            [{"name": c.name, "category": c.category} for c in self._columns],
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "FeatureSchema":
        raw = json.loads(text)
        if not isinstance(raw, list):
            raise ValueError("schema JSON must be an array of objects")
        return cls([(entry["name"], entry["category"]) for entry in raw])

    def save(self, path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path) -> "FeatureSchema":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))
