"""Gradient boosting on histogram-binned features with logistic loss.

Features are quantile-binned into at most 255 bins at fit time; every
split search then scans bin histograms of gradient/hessian sums instead of
sorted raw values.  Trees are grown leaf-wise (best first) up to 31 leaves
with strictly positive second-order gain required for a split, so constant
features can never be chosen.  Leaf values are damped Newton steps with
the learning rate folded in, added to a log-odds baseline over 100 stages.
The training loss after every stage is recorded on the fitted model.
"""

from __future__ import annotations

import heapq
import math

import numpy as np

from .base import BaseClassifier, scores_to_labels

MAX_BINS = 255
N_STAGES = 100
LEARNING_RATE = 0.1
MAX_LEAVES = 31
MIN_SAMPLES_LEAF = 1
_EPS = 1e-12


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _logistic_loss(y: np.ndarray, raw: np.ndarray) -> float:
    # mean log(1 + exp(raw)) - y * raw, computed stably
    return float(np.mean(np.logaddexp(0.0, raw) - y * raw))


def quantile_bin_edges(x: np.ndarray, max_bins: int = MAX_BINS) -> np.ndarray:
    """Boundaries between bins; values <= edge go left of it."""
    uniq = np.unique(x)
    if len(uniq) <= max_bins:
        return (uniq[:-1] + uniq[1:]) / 2.0
    qs = np.arange(1, max_bins) / max_bins
    return np.unique(np.quantile(x, qs))


def bin_codes(x: np.ndarray, edges: np.ndarray) -> np.ndarray:
    # side="left" keeps the invariant: code <= s  <=>  x <= edges[s]
    return np.searchsorted(edges, x, side="left").astype(np.uint8)


class _TreeGrower:
    """One boosting tree: leaf-wise growth on binned columns."""

    def __init__(self, codes, edges, grad, hess, max_depth):
        self.codes = codes
        self.edges = edges
        self.grad = grad
        self.hess = hess
        self.max_depth = max_depth
        self.feature = [-1]
        self.threshold = [math.nan]
        self.left = [-1]
        self.right = [-1]
        self.value = [0.0]
        self.rows_of_leaf = {}

    def _best_split(self, idx):
        g = self.grad[idx]
        h = self.hess[idx]
        g_total = float(g.sum())
        h_total = float(h.sum())
        base = g_total * g_total / (h_total + _EPS)
        best = None
        best_gain = 0.0
        for f in range(self.codes.shape[1]):
            edges = self.edges[f]
            if len(edges) == 0:
                continue
            c = self.codes[idx, f]
            nb = len(edges) + 1
            count = np.bincount(c, minlength=nb)
            g_hist = np.bincount(c, weights=g, minlength=nb)
            h_hist = np.bincount(c, weights=h, minlength=nb)
            n_left = np.cumsum(count)[:-1]
            n_right = len(idx) - n_left
            g_left = np.cumsum(g_hist)[:-1]
            h_left = np.cumsum(h_hist)[:-1]
            g_right = g_total - g_left
            h_right = h_total - h_left
            gain = 0.5 * (
                g_left * g_left / (h_left + _EPS)
                + g_right * g_right / (h_right + _EPS)
                - base
            )
            gain[(n_left < MIN_SAMPLES_LEAF) | (n_right < MIN_SAMPLES_LEAF)] = 0.0
            s = int(np.argmax(gain))
            if gain[s] > best_gain:
                best_gain = float(gain[s])
                best = (f, s)
        return best, best_gain

    def grow(self, idx):
        counter = 0
        heap = []
        self.rows_of_leaf[0] = (idx, 0)
        split, gain = self._best_split(idx)
        if split is not None:
            heap.append((-gain, counter, 0, split))
            counter += 1
        n_leaves = 1
        while heap and n_leaves < MAX_LEAVES:
            _, _, node, (f, s) = heapq.heappop(heap)
            rows, depth = self.rows_of_leaf.pop(node)
            go_left = self.codes[rows, f] <= s
            left_rows = rows[go_left]
            right_rows = rows[~go_left]
            left_id = len(self.feature)
            right_id = left_id + 1
            self.feature[node] = f
            self.threshold[node] = float(self.edges[f][s])
            self.left[node] = left_id
            self.right[node] = right_id
            for child_rows in (left_rows, right_rows):
                self.feature.append(-1)
                self.threshold.append(math.nan)
                self.left.append(-1)
                self.right.append(-1)
                self.value.append(0.0)
            self.rows_of_leaf[left_id] = (left_rows, depth + 1)
            self.rows_of_leaf[right_id] = (right_rows, depth + 1)
            n_leaves += 1
            for child_id, child_rows in ((left_id, left_rows), (right_id, right_rows)):
                if len(child_rows) < 2:
                    continue
                if self.max_depth is not None and depth + 1 >= self.max_depth:
                    continue
                split, gain = self._best_split(child_rows)
                if split is not None:
                    heapq.heappush(heap, (-gain, counter, child_id, split))
                    counter += 1

    def finalize(self, raw: np.ndarray) -> dict:
        """Newton leaf values (learning rate folded in); updates raw in place."""
        for leaf, (rows, _depth) in self.rows_of_leaf.items():
            g = float(self.grad[rows].sum())
            h = float(self.hess[rows].sum())
            step = -LEARNING_RATE * g / (h + _EPS)
            self.value[leaf] = step
            raw[rows] += step
        return {
            "feature": np.array(self.feature, dtype=np.int64),
            "threshold": np.array(self.threshold, dtype=np.float64),
            "left": np.array(self.left, dtype=np.int64),
            "right": np.array(self.right, dtype=np.int64),
            "value": np.array(self.value, dtype=np.float64),
        }


def _tree_raw(tree: dict, X: np.ndarray) -> np.ndarray:
    node = np.zeros(X.shape[0], dtype=np.int64)
    feature = tree["feature"]
    while True:
        feats = feature[node]
        active = np.nonzero(feats >= 0)[0]
        if len(active) == 0:
            return tree["value"][node]
        cur = node[active]
        go_left = X[active, feats[active]] <= tree["threshold"][cur]
        node[active] = np.where(go_left, tree["left"][cur], tree["right"][cur])


class HistGradientBoostingClassifier(BaseClassifier):
    kind = "hist_gb"

    def __init__(self, max_depth: int | None = None, seed: int = 42):
        self.max_depth = max_depth
        self.seed = seed  # reserved: training is deterministic without draws

    def _fit(self, X, y):
        n, d = X.shape
        edges = [quantile_bin_edges(X[:, f]) for f in range(d)]
        codes = np.empty((n, d), dtype=np.uint8)
        for f in range(d):
            codes[:, f] = bin_codes(X[:, f], edges[f])

        p = min(max(float(np.mean(y)), _EPS), 1.0 - _EPS)
        self.baseline_ = math.log(p / (1.0 - p))
        raw = np.full(n, self.baseline_, dtype=np.float64)
        y_float = y.astype(np.float64)

        self.trees_ = []
        losses = []
        all_rows = np.arange(n, dtype=np.int64)
        for _stage in range(N_STAGES):
            prob = _sigmoid(raw)
            grad = prob - y_float
            hess = prob * (1.0 - prob)
            grower = _TreeGrower(codes, edges, grad, hess, self.max_depth)
            grower.grow(all_rows)
            self.trees_.append(grower.finalize(raw))
            losses.append(_logistic_loss(y_float, raw))
        self.train_loss_per_stage_ = losses

    def _predict(self, X):
        return scores_to_labels(_sigmoid(self._raw(X)))

    def _score(self, X):
        return _sigmoid(self._raw(X))

    def _raw(self, X) -> np.ndarray:
        raw = np.full(X.shape[0], self.baseline_, dtype=np.float64)
        for tree in self.trees_:
            raw += _tree_raw(tree, X)
        return raw

    def split_features_used(self) -> set[int]:
        used = set()
        for tree in self.trees_:
            used.update(int(f) for f in tree["feature"] if f >= 0)
        return used

    def _get_state(self):
        return {
            "baseline": self.baseline_,
            "trees": self.trees_,
            "train_loss_per_stage": np.asarray(self.train_loss_per_stage_),
        }

    def _set_state(self, state):
        self.baseline_ = float(state["baseline"])
        self.trees_ = state["trees"]
        self.train_loss_per_stage_ = state["train_loss_per_stage"].tolist()
