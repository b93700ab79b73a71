"""Linear SVM trained by per-sample subgradient descent on the hinge loss."""

from __future__ import annotations

import math

import numpy as np

from ..rng import Xoshiro256StarStar, derive_seed
from .base import BaseClassifier

L2_ALPHA = 1e-4


class SGDHingeClassifier(BaseClassifier):
    """Hinge loss + L2 (alpha=1e-4), inverse-scaling step size.

    The step size is ``eta_t = 1 / (alpha * (t0 + t))`` with ``t0`` chosen
    so the first step is ``sqrt(1 / sqrt(alpha))`` (Bottou's heuristic);
    the intercept is not regularized.  One epoch visits all rows in a
    seeded shuffled order.  Training stops when the epoch objective
    (mean hinge + L2 penalty) improves on the best seen by less than
    ``tol``, or after ``max_iter`` epochs.  The per-epoch objective curve
    is kept on the fitted model.
    """

    kind = "sgd_svm"

    def __init__(self, max_iter: int = 1000, tol: float = 1e-3, seed: int = 42):
        self.max_iter = max_iter
        self.tol = tol
        self.seed = seed

    def _fit(self, X, y):
        if len(np.unique(y)) < 2:
            raise ValueError("training data must contain both classes")
        n, d = X.shape
        y_signed = 2.0 * y - 1.0
        alpha = L2_ALPHA
        eta0 = math.sqrt(1.0 / math.sqrt(alpha))
        t0 = 1.0 / (alpha * eta0)

        w = np.zeros(d, dtype=np.float64)
        b = 0.0
        rng = Xoshiro256StarStar(derive_seed(self.seed, 0x56D))
        order = np.arange(n, dtype=np.int64)
        t = 0
        best = math.inf
        curve = []
        n_iter = 0
        for _ in range(self.max_iter):
            rng.shuffle(order)
            for i in order:
                t += 1
                eta = 1.0 / (alpha * (t0 + t))
                xi = X[i]
                yi = y_signed[i]
                margin = yi * (xi @ w + b)
                w *= 1.0 - eta * alpha
                if margin < 1.0:
                    w += (eta * yi) * xi
                    b += eta * yi
            n_iter += 1
            hinge = np.maximum(0.0, 1.0 - y_signed * (X @ w + b)).mean()
            objective = hinge + 0.5 * alpha * float(w @ w)
            curve.append(objective)
            if best - objective < self.tol:
                break
            best = objective
        self.coef_ = w
        self.intercept_ = b
        self.n_iter_ = n_iter
        self.objective_curve_ = curve

    def _margins(self, X) -> np.ndarray:
        return X @ self.coef_ + self.intercept_

    def _predict(self, X):
        return (self._margins(X) > 0.0).astype(np.int64)

    def _score(self, X):
        return self._margins(X)

    def _get_state(self):
        return {
            "coef": self.coef_,
            "intercept": self.intercept_,
            "n_iter": self.n_iter_,
            "objective_curve": np.asarray(self.objective_curve_, dtype=np.float64),
        }

    def _set_state(self, state):
        self.coef_ = state["coef"]
        self.intercept_ = float(state["intercept"])
        self.n_iter_ = int(state["n_iter"])
        self.objective_curve_ = state["objective_curve"].tolist()
