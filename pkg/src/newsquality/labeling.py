"""Domain-level quality labeling.

Each record's URL is reduced to a registrable domain ("example.com"),
joined against a table of per-domain quality scores in [0, 1], and
binarized at a threshold: strictly above -> 1 (high quality), otherwise 0.
All rows from one domain share its score, so labels are consistent per
source by construction.

The last-two-labels domain reduction is only sound for a corpus known to
consist of .com hosts; ``require_com=True`` enforces that premise.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass
from pathlib import Path

# Fixed default quality cutoff: the lower median of the full-scale labeled
# corpus, pinned so desk runs and full runs binarize identically.
DEFAULT_THRESHOLD = 0.8163

THRESHOLD_MODES = ("fixed", "median")

_SCHEME_RE = re.compile(r"^[a-zA-Z][a-zA-Z0-9+.\-]*://")
_LABEL_RE = re.compile(r"^[a-z0-9\-_]+$")


class DomainError(ValueError):
    """URL from which no usable host can be extracted."""


def extract_domain(url: str, *, require_com: bool = False) -> str:
    """Reduce a page URL to its registrable domain.

    Lowercases; strips scheme, userinfo, port, path, query, and fragment;
    drops a leading ``www.``; keeps the last two dot-separated labels.
    Idempotent: feeding the result back returns it unchanged.
    """
    if not url or not url.strip():
        raise DomainError("empty URL")
    host = _SCHEME_RE.sub("", url.strip().lower())
    for sep in ("/", "?", "#"):
        cut = host.find(sep)
        if cut != -1:
            host = host[:cut]
    at = host.rfind("@")
    if at != -1:
        host = host[at + 1 :]
    colon = host.find(":")
    if colon != -1:
        host = host[:colon]
    if host.startswith("www."):
        host = host[4:]
    host = host.strip(".")
    if not host:
        raise DomainError(f"no host in URL {url!r}")
    labels = host.split(".")
    if any(not _LABEL_RE.match(label) for label in labels):
        raise DomainError(f"invalid host {host!r} in URL {url!r}")
    if require_com and labels[-1] != "com":
        raise DomainError(f"non-.com host {host!r}")
    return ".".join(labels[-2:])


@dataclass(frozen=True)
class Threshold:
    value: float
    provenance: str  # "fixed" or "median"

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise ValueError("threshold must be in [0, 1]")
        if self.provenance not in THRESHOLD_MODES:
            raise ValueError(f"provenance must be one of {THRESHOLD_MODES}")

    def to_dict(self) -> dict:
        return {"value": self.value, "provenance": self.provenance}


def compute_threshold(values, mode: str) -> Threshold:
    """Fixed default, or the lower median of the given quality scores.

    The lower median (element at index ``(n - 1) // 2`` of the sorted
    multiset) is always an observed value, which keeps the strictly-greater
    binarization rule meaningful at the boundary.
    """
    if mode == "fixed":
        return Threshold(DEFAULT_THRESHOLD, "fixed")
    if mode != "median":
        raise ValueError(f"mode must be one of {THRESHOLD_MODES}")
    values = sorted(float(v) for v in values)
    if not values:
        raise ValueError("median threshold requires at least one value")
    return Threshold(values[(len(values) - 1) // 2], "median")


def binarize(pc1: float, threshold: Threshold) -> int:
    """1 iff strictly above the threshold; equality labels 0."""
    if not 0.0 <= pc1 <= 1.0:
        raise ValueError("quality score must be in [0, 1]")
    return 1 if pc1 > threshold.value else 0


class DomainQualityTable:
    """Immutable mapping of registrable domain -> quality score in [0, 1]."""

    def __init__(self, entries: dict):
        table = {}
        for domain, pc1 in entries.items():
            normalized = extract_domain(domain)
            if normalized in table:
                raise ValueError(f"duplicate domain {normalized!r}")
            pc1 = float(pc1)
            if not 0.0 <= pc1 <= 1.0:
                raise ValueError(f"score for {normalized!r} outside [0, 1]: {pc1}")
            table[normalized] = pc1
        self._table = table

    def __contains__(self, domain: str) -> bool:
        return domain in self._table

    def __len__(self) -> int:
        return len(self._table)

    def get(self, domain: str):
        return self._table.get(domain)

    def items(self):
        return self._table.items()


def load_pc1_table(source) -> DomainQualityTable:
    """Load a ``domain,pc1`` CSV; duplicates and out-of-range scores are fatal."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8", newline="") as handle:
            return load_pc1_table(handle)
    reader = csv.reader(source)
    header = next(reader, None)
    if header != ["domain", "pc1"]:
        raise ValueError("quality table must have header 'domain,pc1'")
    entries = {}
    seen = set()
    for line_no, row in enumerate(reader, start=2):
        if len(row) != 2:
            raise ValueError(f"row {line_no}: expected 2 columns")
        domain = extract_domain(row[0])
        if domain in seen:
            raise ValueError(f"row {line_no}: duplicate domain {domain!r}")
        seen.add(domain)
        entries[domain] = float(row[1])
    return DomainQualityTable(entries)


@dataclass
class JoinResult:
    matched: list  # (record, domain, pc1) triples, input order
    unmatched: int
    skipped_bad_url: int


def join_pc1(dataset, table: DomainQualityTable) -> JoinResult:
    """Match records to the quality table by registrable domain.

    Records whose URL yields no host are skipped (counted); records whose
    domain is absent from the table are unmatched (counted).  Two passes
    over the same inputs produce identical matched sequences.
    """
    matched = []
    unmatched = 0
    skipped = 0
    for record in dataset.records:
        try:
            domain = extract_domain(record.url)
        except DomainError:
            skipped += 1
            continue
        pc1 = table.get(domain)
        if pc1 is None:
            unmatched += 1
        else:
            matched.append((record, domain, pc1))
    return JoinResult(matched, unmatched, skipped)
