"""Gaussian naive Bayes with variance smoothing."""

from __future__ import annotations

import numpy as np

from .base import BaseClassifier

VAR_SMOOTHING = 1e-9


class GaussianNaiveBayes(BaseClassifier):
    """Per-class feature Gaussians under the independence assumption.

    Variances are smoothed by ``1e-9 * max feature variance`` (computed
    over all training rows) to keep constant features from collapsing the
    densities.  Score is the softmax class-1 probability of the joint
    log-likelihoods; equal joint likelihood predicts class 0.
    """

    kind = "gaussian_nb"

    def __init__(self):
        pass

    def _fit(self, X, y):
        if len(np.unique(y)) < 2:
            raise ValueError("training data must contain both classes")
        epsilon = VAR_SMOOTHING * float(X.var(axis=0).max())
        self.log_prior_ = np.empty(2, dtype=np.float64)
        self.theta_ = np.empty((2, X.shape[1]), dtype=np.float64)
        self.var_ = np.empty((2, X.shape[1]), dtype=np.float64)
        for cls in (0, 1):
            rows = X[y == cls]
            self.log_prior_[cls] = np.log(rows.shape[0] / X.shape[0])
            self.theta_[cls] = rows.mean(axis=0)
            self.var_[cls] = rows.var(axis=0) + epsilon

    def _joint_log_likelihood(self, X) -> np.ndarray:
        out = np.empty((X.shape[0], 2), dtype=np.float64)
        for cls in (0, 1):
            log_det = np.sum(np.log(2.0 * np.pi * self.var_[cls]))
            sq = ((X - self.theta_[cls]) ** 2 / self.var_[cls]).sum(axis=1)
            out[:, cls] = self.log_prior_[cls] - 0.5 * (log_det + sq)
        return out

    def _predict(self, X):
        jll = self._joint_log_likelihood(X)
        return (jll[:, 1] > jll[:, 0]).astype(np.int64)

    def _score(self, X):
        jll = self._joint_log_likelihood(X)
        shifted = jll - jll.max(axis=1, keepdims=True)
        expd = np.exp(shifted)
        return expd[:, 1] / expd.sum(axis=1)

    def _get_state(self):
        return {
            "log_prior": self.log_prior_,
            "theta": self.theta_,
            "var": self.var_,
        }

    def _set_state(self, state):
        self.log_prior_ = state["log_prior"]
        self.theta_ = state["theta"]
        self.var_ = state["var"]
