"""Metric definitions must agree with the primary pipeline bit-for-bit on
the shared frozen fixture (and directly, when the primary is installed)."""

import json
import random
from pathlib import Path

import pytest

from bert_finetune.metrics import binary_metrics, roc_auc

FIXTURE = json.loads(
    (Path(__file__).parent / "fixtures" / "metric_fixture.json").read_text()
)


def test_confusion_metrics_match_frozen_fixture():
    out = binary_metrics(FIXTURE["y_true"], FIXTURE["y_pred"])
    expected = FIXTURE["expected"]
    assert out["confusion"] == expected["confusion"]
    for key in ("accuracy", "precision", "recall", "f1"):
        assert abs(out[key] - expected[key]) < 1e-9, key


def test_roc_auc_matches_frozen_fixture():
    got = roc_auc(FIXTURE["y_true"], FIXTURE["scores"])
    assert abs(got - FIXTURE["expected"]["roc_auc"]) < 1e-9


def test_agreement_with_primary_module():
    newsquality = pytest.importorskip("newsquality")
    bundle = newsquality.compute_metrics(FIXTURE["y_true"], FIXTURE["y_pred"])
    ours = binary_metrics(FIXTURE["y_true"], FIXTURE["y_pred"])
    assert abs(bundle.accuracy - ours["accuracy"]) < 1e-9
    assert abs(bundle.precision - ours["precision"]) < 1e-9
    assert abs(bundle.recall - ours["recall"]) < 1e-9
    assert abs(bundle.f1 - ours["f1"]) < 1e-9
    assert {"tp": bundle.tp, "fp": bundle.fp, "tn": bundle.tn, "fn": bundle.fn} == ours["confusion"]
    assert abs(newsquality.roc_auc(FIXTURE["y_true"], FIXTURE["scores"])
               - roc_auc(FIXTURE["y_true"], FIXTURE["scores"])) < 1e-9


def test_auc_brute_force_spot_checks():
    rng = random.Random(11)
    for _ in range(100):
        n = rng.randint(4, 40)
        y = [rng.randint(0, 1) for _ in range(n)]
        if sum(y) in (0, n):
            y[0] = 1 - y[0]
        scores = [rng.randint(0, 5) / 5.0 for _ in range(n)]
        pos = [s for s, t in zip(scores, y) if t == 1]
        neg = [s for s, t in zip(scores, y) if t == 0]
        brute = sum(
            1.0 if p > q else 0.5 if p == q else 0.0 for p in pos for q in neg
        ) / (len(pos) * len(neg))
        assert abs(roc_auc(y, scores) - brute) < 1e-12


def test_zero_division_flags():
    out = binary_metrics([1, 1, 0], [0, 0, 0])
    assert out["precision"] == 0.0
    assert "precision_zero_division" in out["warnings"]


def test_auc_requires_both_classes():
    with pytest.raises(ValueError):
        roc_auc([1, 1], [0.5, 0.6])
