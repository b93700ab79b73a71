import numpy as np
import pytest

from newsquality.evaluation import (
    CVReport,
    EvalReport,
    compute_metrics,
    confusion_counts,
    cross_validate,
    evaluate_predictions,
    roc_auc,
)
from newsquality.models import ModelSpec
from newsquality.rng import Xoshiro256StarStar
from newsquality.synthetic import make_shifted_gaussians


def brute_force_auc(y, scores):
    """O(n^2) pairwise oracle: concordant + half ties over pos x neg pairs."""
    pos = [s for s, t in zip(scores, y) if t == 1]
    neg = [s for s, t in zip(scores, y) if t == 0]
    total = 0.0
    for p in pos:
        for q in neg:
            if p > q:
                total += 1.0
            elif p == q:
                total += 0.5
    return total / (len(pos) * len(neg))


def hand_metrics(y, p):
    tp = sum(1 for a, b in zip(y, p) if a == 1 and b == 1)
    fp = sum(1 for a, b in zip(y, p) if a == 0 and b == 1)
    tn = sum(1 for a, b in zip(y, p) if a == 0 and b == 0)
    fn = sum(1 for a, b in zip(y, p) if a == 1 and b == 0)
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return (tp, fp, tn, fn), (tp + tn) / len(y), precision, recall, f1


class TestMetrics:
    def test_hand_enumerated_example(self):
        bundle = compute_metrics([1, 0, 1, 1], [1, 0, 0, 1])
        assert bundle.accuracy == 0.75
        assert bundle.precision == 1.0
        assert bundle.recall == pytest.approx(2 / 3, abs=1e-15)
        assert bundle.f1 == pytest.approx(0.8, abs=1e-15)
        assert (bundle.tp, bundle.fp, bundle.tn, bundle.fn) == (2, 0, 1, 1)

    def test_perfect_prediction(self):
        bundle = compute_metrics([1, 0, 1], [1, 0, 1])
        assert (bundle.accuracy, bundle.precision, bundle.recall, bundle.f1) == (
            1.0, 1.0, 1.0, 1.0,
        )

    def test_all_negative_prediction_zero_division_flags(self):
        bundle = compute_metrics([1, 0, 1], [0, 0, 0])
        assert bundle.precision == 0.0
        assert bundle.recall == 0.0
        assert bundle.f1 == 0.0
        assert "precision_zero_division" in bundle.warnings

    def test_random_instances_match_hand_oracle_exactly(self):
        rng = Xoshiro256StarStar(60)
        for _ in range(1000):
            n = 1 + rng.below(40)
            y = [rng.below(2) for _ in range(n)]
            p = [rng.below(2) for _ in range(n)]
            bundle = compute_metrics(y, p)
            counts, acc, prec, rec, f1 = hand_metrics(y, p)
            assert (bundle.tp, bundle.fp, bundle.tn, bundle.fn) == counts
            assert bundle.accuracy == acc
            assert bundle.precision == prec
            assert bundle.recall == rec
            assert bundle.f1 == f1

    def test_f1_is_harmonic_mean_of_reported_values(self):
        rng = Xoshiro256StarStar(61)
        for _ in range(200):
            y = [rng.below(2) for _ in range(20)]
            p = [rng.below(2) for _ in range(20)]
            b = compute_metrics(y, p)
            if b.precision + b.recall > 0:
                expected = 2 * b.precision * b.recall / (b.precision + b.recall)
                assert abs(b.f1 - expected) < 1e-12

    def test_accuracy_recomputable_from_confusion(self):
        y = [1, 0, 1, 1, 0, 0, 1]
        p = [1, 1, 0, 1, 0, 1, 1]
        b = compute_metrics(y, p)
        assert b.accuracy == (b.tp + b.tn) / (b.tp + b.fp + b.tn + b.fn)

    def test_macro_flag(self):
        b = compute_metrics([1, 0, 1, 1], [1, 0, 0, 1], macro=True)
        # class-0 side: tp'=tn=1, fp'=fn=1, fn'=fp=0
        assert b.precision_macro == pytest.approx((1.0 + 0.5) / 2)
        assert b.recall_macro == pytest.approx((2 / 3 + 1.0) / 2)

    def test_length_mismatch_and_empty_error(self):
        with pytest.raises(ValueError):
            compute_metrics([1, 0], [1])
        with pytest.raises(ValueError):
            compute_metrics([], [])
        with pytest.raises(ValueError):
            confusion_counts([2, 0], [1, 0])


class TestRocAuc:
    def test_textbook_example(self):
        assert roc_auc([0, 0, 1, 1], [0.1, 0.4, 0.35, 0.8]) == 0.75

    def test_perfect_separation(self):
        assert roc_auc([0, 1, 0, 1], [0.1, 0.9, 0.2, 0.8]) == 1.0

    def test_all_ties_is_half(self):
        assert roc_auc([0, 1, 0, 1], [0.5, 0.5, 0.5, 0.5]) == 0.5

    def test_matches_brute_force_with_ties(self):
        rng = Xoshiro256StarStar(62)
        for _ in range(300):
            n = 2 + rng.below(60)
            y = [rng.below(2) for _ in range(n)]
            if sum(y) in (0, n):
                y[0] = 1 - y[0]
            # coarse score grid forces plenty of exact ties
            scores = [rng.below(6) / 5.0 for _ in range(n)]
            assert abs(roc_auc(y, scores) - brute_force_auc(y, scores)) < 1e-12

    def test_negation_symmetry_tie_free(self):
        rng = Xoshiro256StarStar(63)
        y = [rng.below(2) for _ in range(50)]
        y[0] = 1 - y[0] if sum(y) in (0, 50) else y[0]
        scores = rng.uniforms(50)  # continuous: ties have probability ~0
        assert roc_auc(y, scores) + roc_auc(y, -scores) == pytest.approx(1.0, abs=1e-12)

    def test_invariant_under_monotone_transform(self):
        rng = Xoshiro256StarStar(64)
        y = [rng.below(2) for _ in range(80)]
        if sum(y) in (0, 80):
            y[0] = 1 - y[0]
        scores = rng.uniforms(80) * 4 - 2
        base = roc_auc(y, scores)
        assert roc_auc(y, np.exp(scores)) == pytest.approx(base, abs=1e-12)
        assert roc_auc(y, 3 * scores + 10) == pytest.approx(base, abs=1e-12)

    def test_single_class_errors(self):
        with pytest.raises(ValueError):
            roc_auc([1, 1], [0.2, 0.3])
        with pytest.raises(ValueError):
            roc_auc([0, 1], [0.2, np.inf])


class TestReports:
    def test_eval_report_json_round_trip(self):
        report = evaluate_predictions(
            [1, 0, 1], [1, 0, 0], [0.9, 0.2, 0.4],
            model="demo", kind="gaussian_nb", seed=42, params={"a": 1},
            train_time_sec=1.5,
        )
        parsed = EvalReport.from_json(report.to_json())
        assert parsed == report
        assert parsed.confusion["tp"] + parsed.confusion["fn"] == 2

    def test_confusion_sums_to_n_test(self):
        report = evaluate_predictions([1, 0, 1, 0], [1, 1, 1, 0])
        assert sum(report.confusion.values()) == report.n_test == 4


class TestCrossValidate:
    def test_structure_and_recomputable_aggregates(self):
        X, y = make_shifted_gaussians(600, 3, 2.0, seed=70)
        spec = ModelSpec("gaussian_nb", {}, 42)
        report = cross_validate(spec, X, y, k=5, seed=42)
        assert report.k == 5
        assert len(report.folds) == 5
        for metric in ("accuracy", "f1", "roc_auc"):
            values = np.array([getattr(r, metric) for r in report.folds])
            assert abs(report.mean[metric] - values.mean()) < 1e-12
            assert abs(report.std[metric] - values.std()) < 1e-12

    def test_kfold_preconditions_propagate(self):
        X, y = make_shifted_gaussians(8, 2, 1.0, seed=71)
        with pytest.raises(ValueError):
            cross_validate(ModelSpec("gaussian_nb", {}, 42), X, y, k=5, seed=1)

    def test_folds_cover_all_rows_once(self):
        X, y = make_shifted_gaussians(200, 2, 2.0, seed=72)
        report = cross_validate(ModelSpec("gaussian_nb", {}, 42), X, y, k=4, seed=3)
        assert sum(r.n_test for r in report.folds) == 200

    def test_voting_auc_none_propagates_to_aggregates(self):
        X, y = make_shifted_gaussians(300, 2, 2.0, seed=73)
        report = cross_validate(ModelSpec("voting_hard", {}, 42), X, y, k=3, seed=3)
        assert all(r.roc_auc is None for r in report.folds)
        assert report.mean["roc_auc"] is None
        assert report.std["roc_auc"] is None

    def test_json_round_trip(self):
        X, y = make_shifted_gaussians(200, 2, 2.0, seed=74)
        report = cross_validate(ModelSpec("gaussian_nb", {}, 42), X, y, k=4, seed=3)
        parsed = CVReport.from_json(report.to_json())
        assert parsed.mean == report.mean
        assert parsed.folds == report.folds

    def test_fresh_model_per_fold_no_interference(self):
        """Evaluating one fold alone equals that fold inside the full CV run."""
        X, y = make_shifted_gaussians(400, 3, 2.0, seed=75)
        from newsquality.features import ColumnScaler
        from newsquality.sampling import stratified_kfold
        from newsquality.evaluation import evaluate_model

        spec = ModelSpec("random_forest", {"n_estimators": 5, "max_depth": 4}, 42)
        full = cross_validate(spec, X, y, k=3, seed=9)
        plan = stratified_kfold(y, k=3, seed=9)
        train_idx, test_idx = plan.train_test(1)
        scaler = ColumnScaler().fit(X[train_idx])
        model = spec.build().fit(scaler.transform(X[train_idx]), y[train_idx])
        alone = evaluate_model(model, scaler.transform(X[test_idx]), y[test_idx])
        assert alone.accuracy == full.folds[1].accuracy
        assert alone.roc_auc == full.folds[1].roc_auc
