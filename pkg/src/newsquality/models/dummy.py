"""Stratified baseline: predictions sampled from the training label mix."""

from __future__ import annotations

import numpy as np

from ..rng import Xoshiro256StarStar
from .base import BaseClassifier


class DummyStratifiedClassifier(BaseClassifier):
    """Ignores features; samples labels i.i.d. from the train frequencies.

    The score is the class-1 training prior for every row, so ranking
    metrics sit at chance level by construction.
    """

    kind = "dummy_stratified"

    def __init__(self, seed: int = 42):
        self.seed = seed

    def _fit(self, X, y):
        self.prior_1_ = float(np.mean(y))

    def _predict(self, X):
        rng = Xoshiro256StarStar(self.seed)
        draws = rng.uniforms(X.shape[0])
        return (draws < self.prior_1_).astype(np.int64)

    def _score(self, X):
        return np.full(X.shape[0], self.prior_1_, dtype=np.float64)

    def _get_state(self):
        return {"prior_1": self.prior_1_}

    def _set_state(self, state):
        self.prior_1_ = float(state["prior_1"])
