"""Labeled-text loading, balanced capped subsampling, stratified split.

The input is any CSV with ``text`` and ``label`` columns located by header
name; the labeled per-year CSVs written by the newsquality pipeline
qualify, as do minimal two-column files.  Sampling semantics mirror the
primary pipeline: class-balanced selection, per-class shuffled 80/20
split with round-half-up test counts, all seeded.
"""

from __future__ import annotations

import csv
import random
import warnings
from dataclasses import dataclass


def read_labeled_texts(path) -> tuple[list[str], list[int]]:
    """(texts, labels) from a CSV with 'text' and 'label' header columns."""
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None:
            raise ValueError(f"{path}: missing header")
        try:
            text_col = header.index("text")
            label_col = header.index("label")
        except ValueError:
            raise ValueError(f"{path}: header must contain 'text' and 'label' columns")
        texts = []
        labels = []
        for line_no, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise ValueError(f"{path}:{line_no}: ragged row")
            label = int(row[label_col])
            if label not in (0, 1):
                raise ValueError(f"{path}:{line_no}: label must be 0 or 1")
            texts.append(row[text_col])
            labels.append(label)
    if not texts:
        raise ValueError(f"{path}: no data rows")
    return texts, labels


@dataclass
class TextDataset:
    train_texts: list[str]
    train_labels: list[int]
    test_texts: list[str]
    test_labels: list[int]


def balanced_subsample(texts, labels, cap: int, seed: int) -> tuple[list[str], list[int]]:
    """Exactly cap//2 rows per class; the whole balanced subset (with a
    warning) when the input is smaller than the cap."""
    by_class = {0: [], 1: []}
    for i, label in enumerate(labels):
        by_class[label].append(i)
    if not by_class[0] or not by_class[1]:
        raise ValueError("both classes must be present")
    per_class = cap // 2
    available = min(len(by_class[0]), len(by_class[1]))
    if available < per_class:
        warnings.warn(
            f"input smaller than cap: using {available} rows per class "
            f"instead of {per_class}",
            stacklevel=2,
        )
        per_class = available
    rng = random.Random(seed)
    chosen = []
    for cls in (0, 1):
        idx = by_class[cls][:]
        rng.shuffle(idx)
        chosen.extend(idx[:per_class])
    chosen.sort()
    return [texts[i] for i in chosen], [labels[i] for i in chosen]


def stratified_split(texts, labels, test_fraction: float, seed: int) -> TextDataset:
    """Per-class shuffled partition; round-half-up test count per class."""
    if not 0.0 < test_fraction < 1.0:
        raise ValueError("test_fraction must be in (0, 1)")
    rng = random.Random(seed + 1)
    train_idx = []
    test_idx = []
    for cls in (0, 1):
        idx = [i for i, label in enumerate(labels) if label == cls]
        if not idx:
            raise ValueError(f"class {cls} has no rows")
        rng.shuffle(idx)
        n_test = int(test_fraction * len(idx) + 0.5)
        test_idx.extend(idx[:n_test])
        train_idx.extend(idx[n_test:])
    train_idx.sort()
    test_idx.sort()
    return TextDataset(
        train_texts=[texts[i] for i in train_idx],
        train_labels=[labels[i] for i in train_idx],
        test_texts=[texts[i] for i in test_idx],
        test_labels=[labels[i] for i in test_idx],
    )


def prepare_text_dataset(path, sample_cap: int, seed: int,
                         test_fraction: float = 0.2) -> TextDataset:
    texts, labels = read_labeled_texts(path)
    texts, labels = balanced_subsample(texts, labels, sample_cap, seed)
    return stratified_split(texts, labels, test_fraction, seed)


_FILLER = (
    "markets", "council", "report", "season", "update", "weather", "review",
    "local", "first", "annual", "meeting", "project", "budget", "school",
    "travel", "garden", "record", "music", "awards", "study", "results",
    "opens", "plans", "today", "weekly", "notes", "history", "guide",
)


def make_planted_corpus(n_rows: int, seed: int, *, marker: str = "exclusive"):
    """Balanced synthetic texts where the marker token determines the label."""
    rng = random.Random(seed)
    texts = []
    labels = []
    for i in range(n_rows):
        label = i % 2
        words = [rng.choice(_FILLER) for _ in range(rng.randint(4, 10))]
        if label == 1:
            words.insert(rng.randrange(len(words) + 1), marker)
        texts.append(" ".join(words))
        labels.append(label)
    order = list(range(n_rows))
    rng.shuffle(order)
    return [texts[i] for i in order], [labels[i] for i in order]


def write_labeled_csv(path, texts, labels) -> None:
    """Minimal labeled CSV (text,label) accepted by the harness."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["text", "label"])
        for text, label in zip(texts, labels):
            writer.writerow([text, str(label)])
