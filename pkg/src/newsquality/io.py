"""Streaming CSV ingestion and export of headline/link records.

The on-disk format is a header-first, comma-separated, double-quoted UTF-8
CSV with fixed leading columns ``url,text,published_at`` followed by one
column per schema feature.  ``published_at`` accepts ``YYYY-MM-DD`` or a
bare ``YYYY``.  Readers are single-pass and hold one row at a time, so peak
memory does not depend on file size; :func:`read_records` merely collects
the streamed rows into a dataset.

Rows that violate record invariants are rejected, counted by reason, and
never silently dropped.  Structural problems (bad header, ragged row) abort
the read: they indicate a corrupt file rather than a bad row.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path

import numpy as np

from .schema import FeatureSchema

FIXED_COLUMNS = ("url", "text", "published_at")

REASON_TOO_SHORT = "too_short"
REASON_BAD_NUMBER = "bad_number"
REASON_BAD_DATE = "bad_date"

MIN_WORDS = 3


class DataFormatError(ValueError):
    """Structural CSV problem: missing/incorrect header or ragged row."""


@dataclass(frozen=True)
class HeadlineRecord:
    url: str
    text: str
    published_at: date
    features: np.ndarray

    @property
    def year(self) -> int:
        return self.published_at.year

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HeadlineRecord)
            and self.url == other.url
            and self.text == other.text
            and self.published_at == other.published_at
            and self.features.shape == other.features.shape
            and bool(np.all(self.features == other.features))
        )


@dataclass
class RawDataset:
    schema: FeatureSchema
    records: list[HeadlineRecord]

    def __len__(self) -> int:
        return len(self.records)

    def matrix(self) -> np.ndarray:
        if not self.records:
            return np.empty((0, len(self.schema)), dtype=np.float64)
        return np.stack([r.features for r in self.records])

    def years(self) -> np.ndarray:
        return np.array([r.year for r in self.records], dtype=np.int64)


@dataclass
class RejectionLog:
    counts: dict = field(default_factory=dict)
    examples: list = field(default_factory=list)
    max_examples: int = 20

    def add(self, line_no: int, reason: str) -> None:
        self.counts[reason] = self.counts.get(reason, 0) + 1
        if len(self.examples) < self.max_examples:
            self.examples.append((line_no, reason))

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def expected_header(schema: FeatureSchema) -> list[str]:
    return list(FIXED_COLUMNS) + list(schema.names)


def parse_published_at(cell: str) -> date:
    cell = cell.strip()
    if len(cell) == 4 and cell.isdigit():
        return date(int(cell), 1, 1)
    return date.fromisoformat(cell)


def _parse_row(row: list[str], n_features: int, line_no: int):
    """Return (record, None) or (None, reason) for one data row."""
    url, text, published = row[0], row[1], row[2]
    if len(text.split()) < MIN_WORDS:
        return None, REASON_TOO_SHORT
    try:
        when = parse_published_at(published)
    except ValueError:
        return None, REASON_BAD_DATE
    features = np.empty(n_features, dtype=np.float64)
    for j in range(n_features):
        try:
            value = float(row[3 + j])
        except ValueError:
            return None, REASON_BAD_NUMBER
        if not math.isfinite(value):
            return None, REASON_BAD_NUMBER
        features[j] = value
    features.flags.writeable = False
    return HeadlineRecord(url, text, when, features), None


def iter_records(source, schema: FeatureSchema, rejections: RejectionLog | None = None):
    """Yield validated records from an open text stream or a path.

    Single pass, one row in memory at a time.  Invalid rows are recorded in
    ``rejections`` (when given) and skipped.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8", newline="") as handle:
            yield from iter_records(handle, schema, rejections)
            return

    reader = csv.reader(source)
    header = next(reader, None)
    if header is None:
        raise DataFormatError("missing header row")
    want = expected_header(schema)
    if header != want:
        raise DataFormatError(
            f"header mismatch: expected {len(want)} columns starting "
            f"{want[:4]}, got {header[:4]} ({len(header)} columns)"
        )
    n_features = len(schema)
    width = len(want)
    for line_no, row in enumerate(reader, start=2):
        if len(row) != width:
            raise DataFormatError(
                f"row {line_no}: expected {width} columns, got {len(row)}"
            )
        record, reason = _parse_row(row, n_features, line_no)
        if record is None:
            if rejections is not None:
                rejections.add(line_no, reason)
            continue
        yield record


def read_records(source, schema: FeatureSchema) -> tuple[RawDataset, RejectionLog]:
    """Read a full file into a dataset plus the rejection log."""
    log = RejectionLog()
    records = list(iter_records(source, schema, log))
    return RawDataset(schema, records), log


def format_float(value: float) -> str:
    """Shortest decimal string that round-trips the exact double."""
    return repr(float(value))


def write_records(dataset: RawDataset, sink) -> int:
    """Write a dataset; re-reading reproduces it exactly (values bit-equal)."""
    if isinstance(sink, (str, Path)):
        with open(sink, "w", encoding="utf-8", newline="") as handle:
            return write_records(dataset, handle)

    writer = csv.writer(sink)
    count = 0
    try:
        writer.writerow(expected_header(dataset.schema))
        for record in dataset.records:
            writer.writerow(
                [record.url, record.text, record.published_at.isoformat()]
                + [format_float(v) for v in record.features]
            )
            count += 1
    except OSError as exc:
        raise OSError(f"write failed after {count} of {len(dataset)} rows: {exc}") from exc
    return count


# -- labeled CSV: data columns plus domain, pc1, label ---------------------

LABELED_EXTRA_COLUMNS = ("domain", "pc1", "label")


def labeled_header(schema: FeatureSchema) -> list[str]:
    return expected_header(schema) + list(LABELED_EXTRA_COLUMNS)


def write_labeled_csv(path, schema: FeatureSchema, rows) -> int:
    """Write (record, domain, pc1, label) tuples in the labeled layout."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(labeled_header(schema))
        count = 0
        for record, domain, pc1, label in rows:
            writer.writerow(
                [record.url, record.text, record.published_at.isoformat()]
                + [format_float(v) for v in record.features]
                + [domain, format_float(pc1), str(int(label))]
            )
            count += 1
    return count


def iter_labeled_csv(path, schema: FeatureSchema):
    """Yield (record, domain, pc1, label) from a labeled CSV, streaming."""
    want = labeled_header(schema)
    n_features = len(schema)
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header != want:
            raise DataFormatError(f"labeled header mismatch in {path}")
        for line_no, row in enumerate(reader, start=2):
            if len(row) != len(want):
                raise DataFormatError(
                    f"row {line_no}: expected {len(want)} columns, got {len(row)}"
                )
            record, reason = _parse_row(row[: 3 + n_features], n_features, line_no)
            if record is None:
                raise DataFormatError(f"row {line_no}: invalid record ({reason})")
            domain = row[3 + n_features]
            pc1 = float(row[4 + n_features])
            label = int(row[5 + n_features])
            if label not in (0, 1):
                raise DataFormatError(f"row {line_no}: label must be 0 or 1")
            yield record, domain, pc1, label
