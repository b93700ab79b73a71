import numpy as np
import pytest

from newsquality.sampling import (
    FoldPlan,
    SplitPlan,
    stratified_kfold,
    stratified_split,
    undersample_by_year,
)
from newsquality.rng import Xoshiro256StarStar


def make_year_data(spec):
    """spec: {year: (n_zero, n_one)} -> (y, years) arrays in mixed order."""
    ys = []
    yrs = []
    for year, (n0, n1) in spec.items():
        ys.extend([0] * n0 + [1] * n1)
        yrs.extend([year] * (n0 + n1))
    y = np.array(ys, dtype=np.int64)
    years = np.array(yrs, dtype=np.int64)
    rng = Xoshiro256StarStar(1)
    perm = rng.permutation(len(y))
    return y[perm], years[perm]


class TestUndersample:
    def test_majority_downsampled_to_minority(self):
        y, years = make_year_data({2020: (60, 100)})
        result = undersample_by_year(y, years, seed=42)
        kept = y[result.indices]
        assert int((kept == 0).sum()) == 60
        assert int((kept == 1).sum()) == 60
        assert result.per_year[2020] == {0: 60, 1: 60}

    def test_per_year_minority_rule(self):
        y, years = make_year_data({2019: (10, 10), 2020: (8, 5)})
        result = undersample_by_year(y, years, seed=42)
        assert len(result.indices) == 30
        for year, want in ((2019, 10), (2020, 5)):
            mask = years[result.indices] == year
            kept = y[result.indices][mask]
            assert int((kept == 0).sum()) == want
            assert int((kept == 1).sum()) == want

    def test_year_missing_class_dropped_and_logged(self):
        y, years = make_year_data({2019: (5, 5), 2021: (7, 0)})
        result = undersample_by_year(y, years, seed=42)
        assert result.dropped_years == [2021]
        assert set(years[result.indices].tolist()) == {2019}

    def test_no_duplicates_and_selection_only(self):
        y, years = make_year_data({2018: (500, 300), 2019: (200, 400)})
        result = undersample_by_year(y, years, seed=7)
        assert len(set(result.indices.tolist())) == len(result.indices)
        assert np.all(np.diff(result.indices) > 0)  # sorted, strictly increasing

    def test_deterministic_given_seed(self):
        y, years = make_year_data({2018: (300, 200), 2019: (150, 250)})
        a = undersample_by_year(y, years, seed=42)
        b = undersample_by_year(y, years, seed=42)
        c = undersample_by_year(y, years, seed=43)
        assert np.array_equal(a.indices, b.indices)
        assert not np.array_equal(a.indices, c.indices)

    def test_empty_input_errors(self):
        with pytest.raises(ValueError):
            undersample_by_year(np.array([], dtype=np.int64), np.array([], dtype=np.int64))

    def test_balance_exact_for_all_years(self):
        y, years = make_year_data(
            {2018: (321, 123), 2019: (50, 77), 2020: (400, 398), 2021: (9, 31)}
        )
        result = undersample_by_year(y, years, seed=42)
        kept_y = y[result.indices]
        kept_years = years[result.indices]
        for year in np.unique(kept_years):
            counts = np.bincount(kept_y[kept_years == year], minlength=2)
            assert counts[0] == counts[1]


class TestStratifiedSplit:
    def test_80_20_on_balanced_1000(self):
        y = np.array([0, 1] * 500, dtype=np.int64)
        plan = stratified_split(y, 0.2, seed=42)
        assert len(plan.train_indices) == 800
        assert len(plan.test_indices) == 200
        assert int(y[plan.test_indices].sum()) == 100
        assert int(y[plan.train_indices].sum()) == 400

    def test_disjoint_and_cover(self):
        y = np.array([0] * 30 + [1] * 20, dtype=np.int64)
        plan = stratified_split(y, 0.3, seed=5)
        union = np.sort(np.concatenate([plan.train_indices, plan.test_indices]))
        assert np.array_equal(union, np.arange(50))

    def test_same_seed_identical(self):
        y = np.array([0, 1] * 100, dtype=np.int64)
        a = stratified_split(y, 0.2, seed=9)
        b = stratified_split(y, 0.2, seed=9)
        assert np.array_equal(a.test_indices, b.test_indices)

    def test_smallest_stratified_case(self):
        y = np.array([0, 0, 1, 1], dtype=np.int64)
        plan = stratified_split(y, 0.5, seed=3)
        assert len(plan.train_indices) == 2 and len(plan.test_indices) == 2
        assert int(y[plan.test_indices].sum()) == 1
        assert int(y[plan.train_indices].sum()) == 1

    def test_round_half_up_remainder_to_train(self):
        # 7 per class at 0.25 -> test gets round(1.75) = 2 per class
        y = np.array([0] * 7 + [1] * 7, dtype=np.int64)
        plan = stratified_split(y, 0.25, seed=1)
        assert int((y[plan.test_indices] == 0).sum()) == 2
        assert int((y[plan.test_indices] == 1).sum()) == 2

    def test_fraction_range_enforced(self):
        y = np.array([0, 1], dtype=np.int64)
        for bad in (0.0, 1.0, -0.1, 1.5):
            with pytest.raises(ValueError):
                stratified_split(y, bad, seed=1)

    def test_json_round_trip(self):
        y = np.array([0, 1] * 50, dtype=np.int64)
        plan = stratified_split(y, 0.2, seed=42)
        parsed = SplitPlan.from_json(plan.to_json())
        assert np.array_equal(parsed.train_indices, plan.train_indices)
        assert np.array_equal(parsed.test_indices, plan.test_indices)
        assert parsed.seed == 42


class TestStratifiedKFold:
    def test_five_folds_of_balanced_100(self):
        y = np.array([0, 1] * 50, dtype=np.int64)
        plan = stratified_kfold(y, k=5, seed=42)
        for fold in range(5):
            idx = plan.fold_indices(fold)
            assert len(idx) == 20
            assert int(y[idx].sum()) == 10

    def test_k_below_two_errors(self):
        y = np.array([0, 1] * 10, dtype=np.int64)
        with pytest.raises(ValueError):
            stratified_kfold(y, k=1, seed=1)

    def test_class_smaller_than_k_errors(self):
        y = np.array([0] * 10 + [1] * 3, dtype=np.int64)
        with pytest.raises(ValueError):
            stratified_kfold(y, k=5, seed=1)

    def test_partition_property(self):
        y = np.array([0] * 33 + [1] * 44, dtype=np.int64)
        plan = stratified_kfold(y, k=4, seed=11)
        seen = np.concatenate([plan.fold_indices(f) for f in range(4)])
        assert np.array_equal(np.sort(seen), np.arange(77))
        train, test = plan.train_test(2)
        assert len(np.intersect1d(train, test)) == 0
        assert len(train) + len(test) == 77

    def test_fold_class_counts_within_one_row(self):
        y = np.array([0] * 51 + [1] * 49, dtype=np.int64)
        plan = stratified_kfold(y, k=5, seed=2)
        for cls in (0, 1):
            counts = [int((y[plan.fold_indices(f)] == cls).sum()) for f in range(5)]
            assert max(counts) - min(counts) <= 1

    def test_json_round_trip(self):
        y = np.array([0, 1] * 20, dtype=np.int64)
        plan = stratified_kfold(y, k=5, seed=42)
        parsed = FoldPlan.from_json(plan.to_json())
        assert np.array_equal(parsed.assignment, plan.assignment)
        assert parsed.k == 5
