"""Binary classification metrics and stratified cross-validation.

Positive class is 1 throughout.  Metrics with a zero denominator return
0.0 and set a warning flag in the report instead of raising; macro
averages are available behind a flag for comparison but class-1 values are
what reports carry.  ROC AUC is the rank statistic (ties count half),
which equals trapezoidal integration of the ROC curve.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .models.base import ScoreUnavailableError
from .models.registry import ModelSpec
from .features import ColumnScaler
from .sampling import stratified_kfold
from .validation import as_label_vector, check_same_length

EVAL_REPORT_FIELDS = (
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
)


@dataclass
class MetricBundle:
    accuracy: float
    precision: float
    recall: float
    f1: float
    tp: int
    fp: int
    tn: int
    fn: int
    warnings: list = field(default_factory=list)
    precision_macro: float | None = None
    recall_macro: float | None = None
    f1_macro: float | None = None


def confusion_counts(y_true, y_pred) -> tuple[int, int, int, int]:
    y_true = as_label_vector(y_true)
    y_pred = as_label_vector(y_pred)
    check_same_length(y_true, y_pred)
    tp = int(np.sum((y_true == 1) & (y_pred == 1)))
    fp = int(np.sum((y_true == 0) & (y_pred == 1)))
    tn = int(np.sum((y_true == 0) & (y_pred == 0)))
    fn = int(np.sum((y_true == 1) & (y_pred == 0)))
    return tp, fp, tn, fn


def _prf(tp: int, fp: int, fn: int, warnings: list, tag: str):
    if tp + fp > 0:
        precision = tp / (tp + fp)
    else:
        precision = 0.0
        warnings.append(f"precision_zero_division{tag}")
    if tp + fn > 0:
        recall = tp / (tp + fn)
    else:
        recall = 0.0
        warnings.append(f"recall_zero_division{tag}")
    if precision + recall > 0:
        f1 = 2.0 * precision * recall / (precision + recall)
    else:
        f1 = 0.0
        warnings.append(f"f1_zero_division{tag}")
    return precision, recall, f1


def compute_metrics(y_true, y_pred, *, macro: bool = False) -> MetricBundle:
    """Accuracy, class-1 precision/recall/F1, and the confusion matrix."""
    tp, fp, tn, fn = confusion_counts(y_true, y_pred)
    n = tp + fp + tn + fn
    warnings: list = []
    precision, recall, f1 = _prf(tp, fp, fn, warnings, "")
    bundle = MetricBundle(
        accuracy=(tp + tn) / n,
        precision=precision,
        recall=recall,
        f1=f1,
        tp=tp,
        fp=fp,
        tn=tn,
        fn=fn,
        warnings=warnings,
    )
    if macro:
        # class-0 metrics come from the mirrored confusion matrix
        p0, r0, f10 = _prf(tn, fn, fp, warnings, "_class0")
        bundle.precision_macro = (precision + p0) / 2.0
        bundle.recall_macro = (recall + r0) / 2.0
        bundle.f1_macro = (f1 + f10) / 2.0
    return bundle


def roc_auc(y_true, scores) -> float:
    """P(random positive outscores random negative), ties counting half.

    Computed from tied ranks: AUC = (R1 - n1 (n1 + 1) / 2) / (n0 * n1)
    where R1 is the rank sum of positives under average ranks.
    """
    y_true = as_label_vector(y_true)
    scores = np.asarray(scores, dtype=np.float64)
    check_same_length(y_true, scores)
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


@dataclass
class EvalReport:
    model: str
    kind: str
    seed: int
    params: dict
    train_time_sec: float | None
    n_test: int
    accuracy: float
    precision: float
    recall: float
    f1: float
    roc_auc: float | None
    confusion: dict
    warnings: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in EVAL_REPORT_FIELDS}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, raw: dict) -> "EvalReport":
        return cls(**{name: raw[name] for name in EVAL_REPORT_FIELDS})

    @classmethod
    def from_json(cls, text: str) -> "EvalReport":
        return cls.from_dict(json.loads(text))


def evaluate_predictions(
    y_true, y_pred, scores=None, *, model="", kind="", seed=0, params=None,
    train_time_sec=None,
) -> EvalReport:
    bundle = compute_metrics(y_true, y_pred)
    auc = None
    if scores is not None:
        auc = roc_auc(y_true, scores)
    return EvalReport(
        model=model,
        kind=kind,
        seed=seed,
        params=dict(params or {}),
        train_time_sec=train_time_sec,
        n_test=bundle.tp + bundle.fp + bundle.tn + bundle.fn,
        accuracy=bundle.accuracy,
        precision=bundle.precision,
        recall=bundle.recall,
        f1=bundle.f1,
        roc_auc=auc,
        confusion={"tp": bundle.tp, "fp": bundle.fp, "tn": bundle.tn, "fn": bundle.fn},
        warnings=list(bundle.warnings),
    )


def evaluate_model(model, X_test, y_test, *, name: str | None = None) -> EvalReport:
    """Predict, score when supported, and assemble the full report."""
    y_pred = model.predict(X_test)
    scores = None
    warnings = []
    try:
        scores = model.predict_score(X_test)
    except ScoreUnavailableError:
        warnings.append("roc_auc_unavailable")
    report = evaluate_predictions(
        y_test,
        y_pred,
        scores,
        model=name or model.kind,
        kind=model.kind,
        seed=int(getattr(model, "seed", 0)),
        params={k: v for k, v in model.get_params().items() if k != "seed"},
        train_time_sec=getattr(model, "train_time_sec_", None),
    )
    report.warnings.extend(warnings)
    return report


@dataclass
class CVReport:
    k: int
    seed: int
    model: str
    folds: list  # EvalReport per fold, fold order
    mean: dict
    std: dict

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "seed": self.seed,
            "model": self.model,
            "folds": [r.to_dict() for r in self.folds],
            "mean": self.mean,
            "std": self.std,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "CVReport":
        raw = json.loads(text)
        return cls(
            k=raw["k"],
            seed=raw["seed"],
            model=raw["model"],
            folds=[EvalReport.from_dict(r) for r in raw["folds"]],
            mean=raw["mean"],
            std=raw["std"],
        )


CV_METRICS = ("accuracy", "precision", "recall", "f1", "roc_auc")


def _aggregate(folds: list) -> tuple[dict, dict]:
    mean = {}
    std = {}
    for metric in CV_METRICS:
        values = [getattr(r, metric) for r in folds]
        if any(v is None for v in values):
            mean[metric] = None
            std[metric] = None
            continue
        arr = np.array(values, dtype=np.float64)
        mean[metric] = float(arr.mean())
        std[metric] = float(arr.std())  # population std
    return mean, std


def cross_validate(
    spec: ModelSpec,
    X,
    y,
    *,
    k: int = 5,
    seed: int = 42,
    scale_per_fold: bool = True,
    name: str | None = None,
) -> CVReport:
    """k-fold stratified CV with a fresh model per fold.

    Each fold trains a newly built estimator on the other k-1 folds (no
    state crosses folds) and, by default, standardizes with statistics
    fitted on that fold's training side only.  Folds are processed one at
    a time; results do not depend on evaluation order.
    """
    X = np.asarray(X, dtype=np.float64)
    y = as_label_vector(y)
    plan = stratified_kfold(y, k=k, seed=seed)
    folds = []
    for fold in range(k):
        train_idx, test_idx = plan.train_test(fold)
        X_train, X_test = X[train_idx], X[test_idx]
        if scale_per_fold:
            scaler = ColumnScaler().fit(X_train)
            X_train = scaler.transform(X_train)
            X_test = scaler.transform(X_test)
        model = spec.build()
        model.fit(X_train, y[train_idx])
        folds.append(evaluate_model(model, X_test, y[test_idx], name=name))
    mean, std = _aggregate(folds)
    return CVReport(
        k=k, seed=seed, model=name or spec.kind, folds=folds, mean=mean, std=std
    )
