"""Binary metrics with definitions identical to the primary pipeline's.

Positive class is 1; zero-denominator metrics return 0.0 with a warning
flag; ROC AUC is the tied-rank statistic.  Agreement with the primary
module is pinned by a shared fixture in the test suite.
"""

from __future__ import annotations

import numpy as np


def confusion_counts(y_true, y_pred) -> tuple[int, int, int, int]:
    y_true = np.asarray(y_true, dtype=np.int64)
    y_pred = np.asarray(y_pred, dtype=np.int64)
    if y_true.shape != y_pred.shape or y_true.ndim != 1 or len(y_true) == 0:
        raise ValueError("need equal-length nonempty 1-D label arrays")
    tp = int(np.sum((y_true == 1) & (y_pred == 1)))
    fp = int(np.sum((y_true == 0) & (y_pred == 1)))
    tn = int(np.sum((y_true == 0) & (y_pred == 0)))
    fn = int(np.sum((y_true == 1) & (y_pred == 0)))
    return tp, fp, tn, fn


def binary_metrics(y_true, y_pred) -> dict:
    tp, fp, tn, fn = confusion_counts(y_true, y_pred)
    n = tp + fp + tn + fn
    warnings = []
    if tp + fp > 0:
        precision = tp / (tp + fp)
    else:
        precision = 0.0
        warnings.append("precision_zero_division")
    if tp + fn > 0:
        recall = tp / (tp + fn)
    else:
        recall = 0.0
        warnings.append("recall_zero_division")
    if precision + recall > 0:
        f1 = 2.0 * precision * recall / (precision + recall)
    else:
        f1 = 0.0
        warnings.append("f1_zero_division")
    return {
        "accuracy": (tp + tn) / n,
        "precision": precision,
        "recall": recall,
        "f1": f1,
        "confusion": {"tp": tp, "fp": fp, "tn": tn, "fn": fn},
        "n_test": n,
        "warnings": warnings,
    }


def roc_auc(y_true, scores) -> float:
    y_true = np.asarray(y_true, dtype=np.int64)
    scores = np.asarray(scores, dtype=np.float64)
    if not np.isfinite(scores).all():
        raise ValueError("scores must be finite")
    n1 = int(y_true.sum())
    n0 = len(y_true) - n1
    if n1 == 0 or n0 == 0:
        raise ValueError("ROC AUC requires both classes present")
    order = np.argsort(scores, kind="stable")
    sorted_scores = scores[order]
    ranks = np.empty(len(scores), dtype=np.float64)
    i = 0
    while i < len(sorted_scores):
        j = i
        while j + 1 < len(sorted_scores) and sorted_scores[j + 1] == sorted_scores[i]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    rank_sum = float(ranks[y_true == 1].sum())
    return (rank_sum - n1 * (n1 + 1) / 2.0) / (n0 * n1)
