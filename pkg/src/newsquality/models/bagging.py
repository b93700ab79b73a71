"""Bagging: unrestricted-depth trees on row and feature subsamples."""

from __future__ import annotations

import numpy as np

from ..rng import Xoshiro256StarStar, derive_seed
from .base import BaseClassifier
from .forest import fit_members
from .tree import TreeArrays, grow_tree, tree_class1_fraction, tree_predict


class BaggingTreeClassifier(BaseClassifier):
    """Majority vote over trees on random row/feature subsets.

    Each member draws ``floor(max_samples * n)`` rows and
    ``floor(max_features * d)`` features, both without replacement, and
    grows an unrestricted-depth tree on that projection (fractional
    subsampling semantics; no bootstrap duplicates).  Vote ties go to
    class 0; the score is the mean class-1 leaf fraction.
    """

    kind = "bagging"

    def __init__(
        self,
        n_estimators: int = 25,
        max_samples: float = 0.6,
        max_features: float = 0.6,
        seed: int = 42,
        n_jobs: int = 1,
    ):
        self.n_estimators = n_estimators
        self.max_samples = max_samples
        self.max_features = max_features
        self.seed = seed
        self.n_jobs = n_jobs

    def _fit(self, X, y):
        if self.n_estimators < 1:
            raise ValueError("n_estimators must be >= 1")
        if not 0.0 < self.max_samples <= 1.0:
            raise ValueError("max_samples must be in (0, 1]")
        if not 0.0 < self.max_features <= 1.0:
            raise ValueError("max_features must be in (0, 1]")
        n, d = X.shape
        n_rows = max(1, int(self.max_samples * n))
        n_feats = max(1, int(self.max_features * d))

        def fit_one(member: int):
            rng = Xoshiro256StarStar(derive_seed(self.seed, member))
            rows = rng.sample_without_replacement(n, n_rows)
            feats = rng.sample_without_replacement(d, n_feats)
            feats.sort()
            tree = grow_tree(X[rows[:, None], feats], y[rows], max_depth=None)
            return feats, tree

        self.members_ = fit_members(self.n_estimators, fit_one, self.n_jobs)

    def _member_feature_counts(self) -> list[int]:
        return [len(feats) for feats, _ in self.members_]

    def _predict(self, X):
        votes = np.zeros(X.shape[0], dtype=np.int64)
        for feats, tree in self.members_:
            votes += tree_predict(tree, X[:, feats])
        return (votes * 2 > len(self.members_)).astype(np.int64)

    def _score(self, X):
        total = np.zeros(X.shape[0], dtype=np.float64)
        for feats, tree in self.members_:
            total += tree_class1_fraction(tree, X[:, feats])
        return total / len(self.members_)

    def _get_state(self):
        return {
            "members": [
                {"features": feats, "tree": tree.to_state()}
                for feats, tree in self.members_
            ]
        }

    def _set_state(self, state):
        self.members_ = [
            (m["features"].astype(np.int64), TreeArrays.from_state(m["tree"]))
            for m in state["members"]
        ]
