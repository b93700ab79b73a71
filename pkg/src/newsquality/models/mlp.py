"""Fully-connected classifier: ReLU hidden layers, logistic output, Adam.

The forward/backward pass lives in module functions
(:func:`loss_and_gradients`) so the analytic gradients can be checked
against central finite differences directly.  Training uses mini-batches,
an L2 penalty on weights (not biases) scaled by the batch size, and early
stopping on a stratified validation carve-out: when the validation
accuracy fails to improve by more than ``tol`` for ``patience`` straight
epochs, training stops and the best-scoring weights are restored.
"""

from __future__ import annotations

import math

import numpy as np

from ..rng import Xoshiro256StarStar, derive_seed
from .base import BaseClassifier, scores_to_labels

ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8
STOP_TOL = 1e-4
MIN_TRAIN_ROWS = 20


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def init_glorot(layer_sizes, rng: Xoshiro256StarStar):
    """Glorot-uniform weights, zero biases, for consecutive layer sizes."""
    weights = []
    biases = []
    for fan_in, fan_out in zip(layer_sizes[:-1], layer_sizes[1:]):
        bound = math.sqrt(6.0 / (fan_in + fan_out))
        w = (rng.uniforms(fan_in * fan_out) * 2.0 - 1.0) * bound
        weights.append(w.reshape(fan_in, fan_out))
        biases.append(np.zeros(fan_out, dtype=np.float64))
    return weights, biases


def forward_logits(weights, biases, X) -> np.ndarray:
    a = X
    last = len(weights) - 1
    for l, (w, b) in enumerate(zip(weights, biases)):
        z = a @ w + b
        a = z if l == last else np.maximum(z, 0.0)
    return a[:, 0]


def loss_and_gradients(weights, biases, X, y, alpha: float):
    """Mean logistic loss + (alpha/2) * ||W||^2 / batch and its gradients."""
    n = X.shape[0]
    activations = [X]
    zs = []
    a = X
    last = len(weights) - 1
    for l, (w, b) in enumerate(zip(weights, biases)):
        z = a @ w + b
        zs.append(z)
        a = z if l == last else np.maximum(z, 0.0)
        activations.append(a)
    logits = activations[-1][:, 0]
    prob = _sigmoid(logits)
    loss = float(np.mean(np.logaddexp(0.0, logits) - y * logits))
    loss += 0.5 * alpha * sum(float((w * w).sum()) for w in weights) / n

    grad_w = [None] * len(weights)
    grad_b = [None] * len(biases)
    delta = ((prob - y) / n)[:, None]
    for l in range(last, -1, -1):
        grad_w[l] = activations[l].T @ delta + (alpha / n) * weights[l]
        grad_b[l] = delta.sum(axis=0)
        if l > 0:
            delta = (delta @ weights[l].T) * (zs[l - 1] > 0.0)
    return loss, grad_w, grad_b


class MLPClassifier(BaseClassifier):
    kind = "mlp"

    def __init__(
        self,
        hidden_layer_sizes: tuple = (256, 128),
        max_iter: int = 1000,
        learning_rate: float = 0.001,
        alpha: float = 0.001,
        validation_fraction: float = 0.1,
        patience: int = 10,
        batch_size: int = 200,
        seed: int = 42,
    ):
        self.hidden_layer_sizes = hidden_layer_sizes
        self.max_iter = max_iter
        self.learning_rate = learning_rate
        self.alpha = alpha
        self.validation_fraction = validation_fraction
        self.patience = patience
        self.batch_size = batch_size
        self.seed = seed

    def _carve_validation(self, y, rng):
        """Stratified validation indices (at least one row per class)."""
        val_parts = []
        train_parts = []
        for cls in (0, 1):
            idx = np.nonzero(y == cls)[0]
            order = rng.permutation(len(idx))
            n_val = max(1, int(math.floor(self.validation_fraction * len(idx) + 0.5)))
            shuffled = idx[order]
            val_parts.append(shuffled[:n_val])
            train_parts.append(shuffled[n_val:])
        return np.sort(np.concatenate(train_parts)), np.sort(np.concatenate(val_parts))

    def _fit(self, X, y):
        if X.shape[0] < MIN_TRAIN_ROWS:
            raise ValueError(f"MLP needs at least {MIN_TRAIN_ROWS} rows")
        if len(np.unique(y)) < 2:
            raise ValueError("training data must contain both classes")
        rng = Xoshiro256StarStar(derive_seed(self.seed, 0x317))
        train_idx, val_idx = self._carve_validation(y, rng)
        X_train, y_train = X[train_idx], y[train_idx].astype(np.float64)
        X_val, y_val = X[val_idx], y[val_idx]

        sizes = [X.shape[1], *self.hidden_layer_sizes, 1]
        weights, biases = init_glorot(sizes, rng)
        m_w = [np.zeros_like(w) for w in weights]
        v_w = [np.zeros_like(w) for w in weights]
        m_b = [np.zeros_like(b) for b in biases]
        v_b = [np.zeros_like(b) for b in biases]

        n = X_train.shape[0]
        batch = min(self.batch_size, n)
        best_score = -math.inf
        best_weights = [w.copy() for w in weights]
        best_biases = [b.copy() for b in biases]
        stall = 0
        step = 0
        scores = []
        n_iter = 0
        for _epoch in range(self.max_iter):
            order = rng.permutation(n)
            for start in range(0, n, batch):
                rows = order[start : start + batch]
                _, grad_w, grad_b = loss_and_gradients(
                    weights, biases, X_train[rows], y_train[rows], self.alpha
                )
                step += 1
                correct1 = 1.0 - ADAM_BETA1**step
                correct2 = 1.0 - ADAM_BETA2**step
                for l in range(len(weights)):
                    m_w[l] = ADAM_BETA1 * m_w[l] + (1 - ADAM_BETA1) * grad_w[l]
                    v_w[l] = ADAM_BETA2 * v_w[l] + (1 - ADAM_BETA2) * grad_w[l] ** 2
                    weights[l] -= self.learning_rate * (m_w[l] / correct1) / (
                        np.sqrt(v_w[l] / correct2) + ADAM_EPS
                    )
                    m_b[l] = ADAM_BETA1 * m_b[l] + (1 - ADAM_BETA1) * grad_b[l]
                    v_b[l] = ADAM_BETA2 * v_b[l] + (1 - ADAM_BETA2) * grad_b[l] ** 2
                    biases[l] -= self.learning_rate * (m_b[l] / correct1) / (
                        np.sqrt(v_b[l] / correct2) + ADAM_EPS
                    )
            n_iter += 1
            val_pred = (forward_logits(weights, biases, X_val) > 0.0).astype(np.int64)
            score = float(np.mean(val_pred == y_val))
            scores.append(score)
            if score > best_score + STOP_TOL:
                best_score = score
                best_weights = [w.copy() for w in weights]
                best_biases = [b.copy() for b in biases]
                stall = 0
            else:
                stall += 1
                if stall >= self.patience:
                    break
        self.weights_ = best_weights
        self.biases_ = best_biases
        self.n_iter_ = n_iter
        self.validation_scores_ = scores
        self.best_validation_score_ = best_score

    def _predict(self, X):
        return scores_to_labels(self._score(X))

    def _score(self, X):
        return _sigmoid(forward_logits(self.weights_, self.biases_, X))

    def _get_state(self):
        return {
            "weights": list(self.weights_),
            "biases": list(self.biases_),
            "n_iter": self.n_iter_,
            "validation_scores": np.asarray(self.validation_scores_, dtype=np.float64),
            "best_validation_score": self.best_validation_score_,
        }

    def _set_state(self, state):
        self.weights_ = list(state["weights"])
        self.biases_ = list(state["biases"])
        self.n_iter_ = int(state["n_iter"])
        self.validation_scores_ = state["validation_scores"].tolist()
        self.best_validation_score_ = float(state["best_validation_score"])
