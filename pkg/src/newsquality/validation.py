"""Input validation helpers for matrices, labels, and paired arrays."""

from __future__ import annotations

import numpy as np


def as_float_matrix(X, *, allow_empty: bool = False) -> np.ndarray:
    """Coerce to a 2-D float64 array and check all values are finite."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if X.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={X.ndim}")
    if not allow_empty and X.shape[0] == 0:
        raise ValueError("matrix has no rows")
    if X.size and not np.isfinite(X).all():
        raise ValueError("matrix contains NaN or infinite values")
    return X


def as_label_vector(y) -> np.ndarray:
    """Coerce to a 1-D int64 vector of {0, 1} labels."""
    y = np.asarray(y)
    if y.ndim != 1:
        raise ValueError(f"expected a 1-D label vector, got ndim={y.ndim}")
    if y.shape[0] == 0:
        raise ValueError("label vector is empty")
    out = y.astype(np.int64, copy=True)
    if np.any((out != 0) & (out != 1)):
        raise ValueError("labels must be 0 or 1")
    return out


def check_same_length(*arrays) -> int:
    lengths = {len(a) for a in arrays}
    if len(lengths) != 1:
        raise ValueError(f"inconsistent array lengths: {sorted(lengths)}")
    return lengths.pop()


def check_feature_count(X: np.ndarray, expected: int) -> None:
    if X.shape[1] != expected:
        raise ValueError(
            f"feature count mismatch: expected {expected}, got {X.shape[1]}"
        )
