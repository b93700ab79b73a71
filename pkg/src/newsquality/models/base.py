"""Shared classifier interface: fit/predict/predict_score plus state I/O.

``predict_score`` returns a real score per row where higher means more
likely class 1; hard-voting ensembles cannot produce one and raise
:class:`ScoreUnavailableError`.  Every concrete class implements
``_get_state``/``_set_state`` so fitted models round-trip through the JSON
envelope in :mod:`newsquality.models.serialize` with bit-identical
predictions.
"""

from __future__ import annotations

import time

import numpy as np

from ..base import NotFittedError, ParamsMixin
from ..validation import as_float_matrix, as_label_vector, check_same_length


class ScoreUnavailableError(RuntimeError):
    """The model kind has no real-valued score (hard voting)."""


class BaseClassifier(ParamsMixin):
    kind: str = ""

    def fit(self, X, y):
        X = as_float_matrix(X)
        y = as_label_vector(y)
        check_same_length(X, y)
        start = time.perf_counter()
        self._fit(X, y)
        self.train_time_sec_ = time.perf_counter() - start
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X) -> np.ndarray:
        X = self._check_predict_input(X)
        return self._predict(X)

    def predict_score(self, X) -> np.ndarray:
        X = self._check_predict_input(X)
        return self._score(X)

    def _check_predict_input(self, X) -> np.ndarray:
        if getattr(self, "n_features_in_", None) is None:
            raise NotFittedError(f"{type(self).__name__} is not fitted")
        X = as_float_matrix(X, allow_empty=True)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"feature count mismatch: expected {self.n_features_in_}, "
                f"got {X.shape[1]}"
            )
        return X

    # subclass hooks -----------------------------------------------------
    def _fit(self, X, y):
        raise NotImplementedError

    def _predict(self, X) -> np.ndarray:
        raise NotImplementedError

    def _score(self, X) -> np.ndarray:
        raise NotImplementedError

    def _get_state(self) -> dict:
        raise NotImplementedError

    def _set_state(self, state: dict) -> None:
        raise NotImplementedError


def scores_to_labels(scores: np.ndarray, threshold: float = 0.5) -> np.ndarray:
    """Fixed decision rule: strictly above the threshold -> 1, else 0."""
    return (scores > threshold).astype(np.int64)
