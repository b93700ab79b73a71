"""End-to-end preparation: label, balance, prune, split, scale.

Order of operations is fixed: yearly balanced undersampling first, the
sparsity rule is measured on the balanced dataset (before splitting), then
the stratified 80/20 split, then column pruning and standardization with
statistics fitted on the training side only so nothing leaks into test.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .features import ColumnScaler, SparsityFilter, SparsityReport
from .io import RawDataset
from .labeling import DomainQualityTable, Threshold, binarize, compute_threshold, join_pc1
from .sampling import BalanceResult, SplitPlan, stratified_split, undersample_by_year


@dataclass
class LabeledArrays:
    """Matched rows as arrays, plus join accounting."""

    X: np.ndarray
    y: np.ndarray
    years: np.ndarray
    domains: list
    pc1: np.ndarray
    threshold: Threshold
    unmatched: int
    skipped_bad_url: int
    records: list


def label_dataset(
    dataset: RawDataset, table: DomainQualityTable, threshold_mode: str = "fixed"
) -> LabeledArrays:
    """Join quality scores by domain and binarize at the chosen threshold."""
    join = join_pc1(dataset, table)
    pc1 = np.array([m[2] for m in join.matched], dtype=np.float64)
    threshold = compute_threshold(pc1, threshold_mode)
    y = np.array([binarize(v, threshold) for v in pc1], dtype=np.int64)
    if join.matched:
        X = np.stack([m[0].features for m in join.matched])
    else:
        X = np.empty((0, len(dataset.schema)), dtype=np.float64)
    years = np.array([m[0].year for m in join.matched], dtype=np.int64)
    return LabeledArrays(
        X=X,
        y=y,
        years=years,
        domains=[m[1] for m in join.matched],
        pc1=pc1,
        threshold=threshold,
        unmatched=join.unmatched,
        skipped_bad_url=join.skipped_bad_url,
        records=[m[0] for m in join.matched],
    )


@dataclass
class PreparedDataset:
    """Everything the training and CV stages consume."""

    X_train: np.ndarray
    y_train: np.ndarray
    years_train: np.ndarray
    X_test: np.ndarray
    y_test: np.ndarray
    years_test: np.ndarray
    X_balanced: np.ndarray  # pruned, unscaled, pre-split (CV input)
    y_balanced: np.ndarray
    years_balanced: np.ndarray
    feature_names: list
    sparsity: SparsityReport
    scaler: ColumnScaler
    split: SplitPlan
    balance: BalanceResult


def prepare_dataset(
    X,
    y,
    years,
    feature_names,
    *,
    seed: int = 42,
    test_fraction: float = 0.2,
    min_sparsity_fraction: float = 0.01,
) -> PreparedDataset:
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    years = np.asarray(years, dtype=np.int64)

    balance = undersample_by_year(y, years, seed=seed)
    keep = balance.indices
    X_bal, y_bal, years_bal = X[keep], y[keep], years[keep]

    filt = SparsityFilter(min_sparsity_fraction).fit(X_bal, feature_names)
    X_pruned = filt.transform(X_bal)

    split = stratified_split(y_bal, test_fraction=test_fraction, seed=seed)
    X_train_raw = X_pruned[split.train_indices]
    X_test_raw = X_pruned[split.test_indices]

    scaler = ColumnScaler().fit(X_train_raw, filt.retained_names_)
    return PreparedDataset(
        X_train=scaler.transform(X_train_raw),
        y_train=y_bal[split.train_indices],
        years_train=years_bal[split.train_indices],
        X_test=scaler.transform(X_test_raw),
        y_test=y_bal[split.test_indices],
        years_test=years_bal[split.test_indices],
        X_balanced=X_pruned,
        y_balanced=y_bal,
        years_balanced=years_bal,
        feature_names=list(filt.retained_names_),
        sparsity=filt.report(),
        scaler=scaler,
        split=split,
        balance=balance,
    )
