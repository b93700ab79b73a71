"""CART decision trees: Gini impurity, midpoint thresholds, fixed tie-breaks.

The builder is deterministic by construction: candidate features are
evaluated in ascending index order, thresholds in ascending value order,
and a candidate replaces the incumbent only when its impurity decrease is
strictly larger, so ties resolve to the lowest feature index and lowest
threshold.  Nodes split whenever any valid candidate exists (two nonempty
children), including zero-gain candidates: parity-style data has
first splits with no impurity decrease that are still necessary.
Stopping is purely structural: configured depth, pure node, fewer than two
rows, or no candidate with distinct values.

Trees are stored as flat arrays (feature -1 marks a leaf) and predictions
walk all rows level-synchronously, so no recursion happens anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..rng import Xoshiro256StarStar
from .base import BaseClassifier, scores_to_labels


@dataclass
class TreeArrays:
    feature: np.ndarray  # int64, -1 for leaves
    threshold: np.ndarray  # float64, NaN for leaves
    left: np.ndarray  # int64 child ids, -1 for leaves
    right: np.ndarray
    n0: np.ndarray  # int64 training class counts per node
    n1: np.ndarray

    @property
    def n_nodes(self) -> int:
        return len(self.feature)

    @property
    def max_depth_reached(self) -> int:
        depth = np.zeros(self.n_nodes, dtype=np.int64)
        deepest = 0
        for node in range(self.n_nodes):
            f = self.feature[node]
            if f >= 0:
                child_depth = depth[node] + 1
                depth[self.left[node]] = child_depth
                depth[self.right[node]] = child_depth
                deepest = max(deepest, int(child_depth))
        return deepest

    def to_state(self) -> dict:
        return {
            "feature": self.feature,
            "threshold": self.threshold,
            "left": self.left,
            "right": self.right,
            "n0": self.n0,
            "n1": self.n1,
        }

    @classmethod
    def from_state(cls, state: dict) -> "TreeArrays":
        return cls(
            feature=state["feature"].astype(np.int64),
            threshold=state["threshold"].astype(np.float64),
            left=state["left"].astype(np.int64),
            right=state["right"].astype(np.int64),
            n0=state["n0"].astype(np.int64),
            n1=state["n1"].astype(np.int64),
        )


def _best_split(X, y, idx, feats, n1_total):
    """Best (feature position, threshold, left sorted order) for one node.

    Returns None when no feature offers two distinct adjacent values.
    Candidates are midpoints between consecutive distinct sorted values;
    the winner maximizes Gini impurity decrease with ties resolved to the
    lowest feature index, then the lowest threshold.
    """
    n = len(idx)
    sub = X[idx[:, None], feats]
    order = np.argsort(sub, axis=0, kind="stable")
    sorted_vals = np.take_along_axis(sub, order, axis=0)
    sorted_y = y[idx][order]

    cum1 = np.cumsum(sorted_y, axis=0, dtype=np.float64)
    n_left = np.arange(1, n, dtype=np.float64)[:, None]
    n1_left = cum1[:-1]
    n0_left = n_left - n1_left
    n_right = float(n) - n_left
    n1_right = float(n1_total) - n1_left
    n0_right = n_right - n1_right

    weighted = (
        n_left
        - (n1_left * n1_left + n0_left * n0_left) / n_left
        + n_right
        - (n1_right * n1_right + n0_right * n0_right) / n_right
    ) / float(n)
    n0_total = n - n1_total
    parent = 1.0 - (n1_total / n) ** 2 - (n0_total / n) ** 2
    decrease = parent - weighted
    decrease[sorted_vals[1:] <= sorted_vals[:-1]] = -np.inf

    best = None
    best_decrease = -np.inf
    for j in range(len(feats)):
        col = decrease[:, j]
        pos = int(np.argmax(col))
        dec = col[pos]
        if dec == -np.inf or dec <= best_decrease:
            continue
        best_decrease = dec
        lo = sorted_vals[pos, j]
        hi = sorted_vals[pos + 1, j]
        thr = lo + (hi - lo) / 2.0
        if thr >= hi:  # midpoint rounded up to the upper value
            thr = lo
        best = (j, float(thr), order[: pos + 1, j], order[pos + 1 :, j])
    return best


def grow_tree(
    X: np.ndarray,
    y: np.ndarray,
    *,
    max_depth: int | None = None,
    features_per_split: int | None = None,
    rng: Xoshiro256StarStar | None = None,
) -> TreeArrays:
    """Grow a CART tree; ``features_per_split`` samples a candidate subset
    per node with ``rng`` (both or neither must be given)."""
    if features_per_split is not None and rng is None:
        raise ValueError("features_per_split requires an rng")
    n, d = X.shape
    all_feats = np.arange(d, dtype=np.int64)

    feature: list[int] = []
    threshold: list[float] = []
    left: list[int] = []
    right: list[int] = []
    n0s: list[int] = []
    n1s: list[int] = []

    # stack entries: (row index array, depth, parent id, is_left_child)
    stack = [(np.arange(n, dtype=np.int64), 0, -1, False)]
    while stack:
        idx, depth, parent, is_left = stack.pop()
        node_id = len(feature)
        if parent >= 0:
            if is_left:
                left[parent] = node_id
            else:
                right[parent] = node_id
        n_node = len(idx)
        n1 = int(y[idx].sum())
        n0 = n_node - n1
        feature.append(-1)
        threshold.append(np.nan)
        left.append(-1)
        right.append(-1)
        n0s.append(n0)
        n1s.append(n1)

        if n_node < 2 or n1 == 0 or n0 == 0:
            continue
        if max_depth is not None and depth >= max_depth:
            continue
        if features_per_split is not None and features_per_split < d:
            feats = rng.sample_without_replacement(d, features_per_split)
            feats.sort()
        else:
            feats = all_feats
        found = _best_split(X, y, idx, feats, n1)
        if found is None:
            continue
        j, thr, order_left, order_right = found
        feature[node_id] = int(feats[j])
        threshold[node_id] = thr
        # push right first so the left child is processed (and numbered) first
        stack.append((idx[order_right], depth + 1, node_id, False))
        stack.append((idx[order_left], depth + 1, node_id, True))

    return TreeArrays(
        feature=np.array(feature, dtype=np.int64),
        threshold=np.array(threshold, dtype=np.float64),
        left=np.array(left, dtype=np.int64),
        right=np.array(right, dtype=np.int64),
        n0=np.array(n0s, dtype=np.int64),
        n1=np.array(n1s, dtype=np.int64),
    )


def tree_apply(tree: TreeArrays, X: np.ndarray) -> np.ndarray:
    """Leaf node id for every row (level-synchronous walk, x <= thr goes left)."""
    node = np.zeros(X.shape[0], dtype=np.int64)
    while True:
        feats = tree.feature[node]
        active = np.nonzero(feats >= 0)[0]
        if len(active) == 0:
            return node
        cur = node[active]
        go_left = X[active, feats[active]] <= tree.threshold[cur]
        node[active] = np.where(go_left, tree.left[cur], tree.right[cur])


def tree_class1_fraction(tree: TreeArrays, X: np.ndarray) -> np.ndarray:
    """Training class-1 fraction of the leaf each row lands in."""
    leaves = tree_apply(tree, X)
    n1 = tree.n1[leaves].astype(np.float64)
    n0 = tree.n0[leaves].astype(np.float64)
    return n1 / (n0 + n1)


def tree_predict(tree: TreeArrays, X: np.ndarray) -> np.ndarray:
    """Majority label of the landing leaf; exact ties predict 0."""
    leaves = tree_apply(tree, X)
    return (tree.n1[leaves] > tree.n0[leaves]).astype(np.int64)


class DecisionTreeClassifier(BaseClassifier):
    """Single CART tree behind the shared classifier interface."""

    kind = "decision_tree"

    def __init__(
        self,
        max_depth: int | None = None,
        features_per_split: int | None = None,
        seed: int = 42,
    ):
        self.max_depth = max_depth
        self.features_per_split = features_per_split
        self.seed = seed

    def _fit(self, X, y):
        if self.max_depth is not None and self.max_depth < 0:
            raise ValueError("max_depth must be >= 0 or None")
        rng = None
        if self.features_per_split is not None:
            rng = Xoshiro256StarStar(self.seed)
        self.tree_ = grow_tree(
            X,
            y,
            max_depth=self.max_depth,
            features_per_split=self.features_per_split,
            rng=rng,
        )

    def _predict(self, X):
        return tree_predict(self.tree_, X)

    def _score(self, X):
        return tree_class1_fraction(self.tree_, X)

    def _get_state(self):
        return {"tree": self.tree_.to_state()}

    def _set_state(self, state):
        self.tree_ = TreeArrays.from_state(state["tree"])


__all__ = [
    "TreeArrays",
    "grow_tree",
    "tree_apply",
    "tree_class1_fraction",
    "tree_predict",
    "DecisionTreeClassifier",
    "scores_to_labels",
]
