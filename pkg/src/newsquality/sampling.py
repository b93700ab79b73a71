"""Seeded balanced undersampling and stratified splitting.

All selections are index-based: rows are chosen, never altered or
duplicated.  Per-year undersampling uses a sub-seed derived from
(seed, year), so processing years in any order, or in parallel, cannot
change the result.  Plans serialize to JSON for exact replay.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .rng import Xoshiro256StarStar, derive_seed
from .validation import as_label_vector, check_same_length

DEFAULT_SEED = 42


@dataclass
class BalanceResult:
    """Indices kept by yearly undersampling, plus per-year bookkeeping."""

    indices: np.ndarray  # ascending original row positions
    per_year: dict  # year -> kept count per class {0: n, 1: n}
    dropped_years: list  # years lacking one class entirely
    seed: int

    def to_json(self) -> str:
        return json.dumps(
            {
                "seed": self.seed,
                "indices": self.indices.tolist(),
                "per_year": {
                    str(y): {"0": c[0], "1": c[1]} for y, c in sorted(self.per_year.items())
                },
                "dropped_years": sorted(self.dropped_years),
            }
        )


def undersample_by_year(y, years, seed: int = DEFAULT_SEED) -> BalanceResult:
    """Randomly downsample the majority class to the minority count per year.

    Years missing one class entirely are dropped (recorded in the result).
    Deterministic given the seed; selection only, rows are never modified.
    """
    y = as_label_vector(y)
    years = np.asarray(years, dtype=np.int64)
    check_same_length(y, years)

    kept_parts = []
    per_year = {}
    dropped = []
    for year in sorted(set(years.tolist())):
        in_year = np.nonzero(years == year)[0]
        ones = in_year[y[in_year] == 1]
        zeros = in_year[y[in_year] == 0]
        if len(ones) == 0 or len(zeros) == 0:
            dropped.append(int(year))
            continue
        minority = min(len(ones), len(zeros))
        rng = Xoshiro256StarStar(derive_seed(seed, year))
        majority = zeros if len(zeros) > len(ones) else ones
        keep_major = majority[rng.sample_without_replacement(len(majority), minority)]
        minor = ones if majority is zeros else zeros
        kept_parts.append(minor)
        kept_parts.append(keep_major)
        per_year[int(year)] = {0: minority, 1: minority}
    if not kept_parts:
        raise ValueError("no year has both classes present")
    indices = np.sort(np.concatenate(kept_parts))
    return BalanceResult(indices=indices, per_year=per_year, dropped_years=dropped, seed=seed)


@dataclass
class SplitPlan:
    """Disjoint train/test index sets preserving per-class proportions."""

    train_indices: np.ndarray
    test_indices: np.ndarray
    test_fraction: float
    seed: int

    def to_json(self) -> str:
        return json.dumps(
            {
                "seed": self.seed,
                "test_fraction": self.test_fraction,
                "train_indices": self.train_indices.tolist(),
                "test_indices": self.test_indices.tolist(),
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "SplitPlan":
        raw = json.loads(text)
        return cls(
            train_indices=np.array(raw["train_indices"], dtype=np.int64),
            test_indices=np.array(raw["test_indices"], dtype=np.int64),
            test_fraction=raw["test_fraction"],
            seed=raw["seed"],
        )


def _round_half_up(x: float) -> int:
    return int(np.floor(x + 0.5))


def stratified_split(y, test_fraction: float = 0.2, seed: int = DEFAULT_SEED) -> SplitPlan:
    """Per-class random partition; test gets round-half-up of each class.

    Remainder rows stay in train.  Index sets are emitted in ascending
    order (canonical form), deterministic given the seed.
    """
    if not 0.0 < test_fraction < 1.0:
        raise ValueError("test_fraction must be in (0, 1)")
    y = as_label_vector(y)
    rng = Xoshiro256StarStar(derive_seed(seed, 0x5B17))
    test_parts = []
    train_parts = []
    for cls in (0, 1):
        idx = np.nonzero(y == cls)[0]
        if len(idx) == 0:
            raise ValueError(f"class {cls} has no rows")
        order = rng.permutation(len(idx))
        n_test = _round_half_up(test_fraction * len(idx))
        shuffled = idx[order]
        test_parts.append(shuffled[:n_test])
        train_parts.append(shuffled[n_test:])
    return SplitPlan(
        train_indices=np.sort(np.concatenate(train_parts)),
        test_indices=np.sort(np.concatenate(test_parts)),
        test_fraction=test_fraction,
        seed=seed,
    )


@dataclass
class FoldPlan:
    """Fold id per row; folds partition the rows with balanced classes."""

    k: int
    assignment: np.ndarray  # fold id in [0, k) per row
    seed: int

    def fold_indices(self, fold: int) -> np.ndarray:
        return np.nonzero(self.assignment == fold)[0]

    def train_test(self, fold: int) -> tuple[np.ndarray, np.ndarray]:
        return np.nonzero(self.assignment != fold)[0], self.fold_indices(fold)

    def to_json(self) -> str:
        return json.dumps(
            {"seed": self.seed, "k": self.k, "assignment": self.assignment.tolist()}
        )

    @classmethod
    def from_json(cls, text: str) -> "FoldPlan":
        raw = json.loads(text)
        return cls(
            k=raw["k"],
            assignment=np.array(raw["assignment"], dtype=np.int64),
            seed=raw["seed"],
        )


def stratified_kfold(y, k: int = 5, seed: int = DEFAULT_SEED) -> FoldPlan:
    """Shuffled per-class round-robin fold assignment.

    Every fold's class counts are within one row of every other fold's, so
    balanced input stays balanced per fold.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    y = as_label_vector(y)
    assignment = np.empty(len(y), dtype=np.int64)
    rng = Xoshiro256StarStar(derive_seed(seed, 0xF01D))
    for cls in (0, 1):
        idx = np.nonzero(y == cls)[0]
        if len(idx) < k:
            raise ValueError(f"class {cls} has fewer rows ({len(idx)}) than k={k}")
        order = rng.permutation(len(idx))
        assignment[idx[order]] = np.arange(len(idx)) % k
    return FoldPlan(k=k, assignment=assignment, seed=seed)
