"""Random forest: bootstrapped CART trees with per-split feature subsets."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..rng import Xoshiro256StarStar, derive_seed
from .base import BaseClassifier
from .tree import TreeArrays, grow_tree, tree_class1_fraction, tree_predict


def fit_members(n_members: int, fit_one, n_jobs: int):
    """Run ``fit_one(member_index)`` for every member, merged in index order.

    Each member derives its own random stream from its index, so the result
    is identical for any thread count.
    """
    if n_jobs is None or n_jobs <= 1:
        return [fit_one(i) for i in range(n_members)]
    with ThreadPoolExecutor(max_workers=n_jobs) as pool:
        return list(pool.map(fit_one, range(n_members)))


class RandomForestClassifier(BaseClassifier):
    """Majority vote over trees grown on bootstrap samples.

    Every tree draws a bootstrap of the full training size (with
    replacement) and considers ``ceil(sqrt(d))`` random features at each
    split.  The score is the mean class-1 leaf fraction across trees; the
    hard vote breaks exact ties toward class 0.
    """

    kind = "random_forest"

    def __init__(
        self,
        n_estimators: int = 200,
        max_depth: int | None = 30,
        seed: int = 42,
        n_jobs: int = 1,
    ):
        self.n_estimators = n_estimators
        self.max_depth = max_depth
        self.seed = seed
        self.n_jobs = n_jobs

    def _fit(self, X, y):
        if self.n_estimators < 1:
            raise ValueError("n_estimators must be >= 1")
        n, d = X.shape
        features_per_split = min(d, math.ceil(math.sqrt(d)))

        def fit_one(member: int) -> TreeArrays:
            rng = Xoshiro256StarStar(derive_seed(self.seed, member))
            rows = rng.integers_below(n, n)
            return grow_tree(
                X[rows],
                y[rows],
                max_depth=self.max_depth,
                features_per_split=features_per_split,
                rng=rng,
            )

        self.trees_ = fit_members(self.n_estimators, fit_one, self.n_jobs)

    def _predict(self, X):
        votes = np.zeros(X.shape[0], dtype=np.int64)
        for tree in self.trees_:
            votes += tree_predict(tree, X)
        return (votes * 2 > len(self.trees_)).astype(np.int64)

    def _score(self, X):
        total = np.zeros(X.shape[0], dtype=np.float64)
        for tree in self.trees_:
            total += tree_class1_fraction(tree, X)
        return total / len(self.trees_)

    def _get_state(self):
        return {"trees": [t.to_state() for t in self.trees_]}

    def _set_state(self, state):
        self.trees_ = [TreeArrays.from_state(s) for s in state["trees"]]
