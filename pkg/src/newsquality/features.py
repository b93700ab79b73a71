"""Text surface measures, sparse-feature pruning, and standardization.

The tagger-derived columns arrive precomputed; this module owns the numeric
surface measures computed from the link text, the >= 1% nonzero sparsity
rule, and train-only standardization.  Both the filter and the scaler are
fit/transform estimators whose fitted state serializes to JSON so prepared
runs are auditable and resumable.
"""

from __future__ import annotations

import json
import math
import string
from dataclasses import dataclass

import numpy as np

from .base import NotFittedError, ParamsMixin
from .validation import as_float_matrix, check_feature_count

MEASURE_NAMES = (
    "word_count",
    "char_count",
    "avg_word_length",
    "avg_bigram_length",
    "avg_trigram_length",
    "uppercase_ratio",
    "digit_ratio",
    "punctuation_count",
)

_PUNCT = set(string.punctuation)


@dataclass(frozen=True)
class SurfaceMeasures:
    """Numeric surface statistics of one text; zero-filled when degenerate."""

    word_count: int
    char_count: int
    avg_word_length: float
    avg_bigram_length: float
    avg_trigram_length: float
    uppercase_ratio: float
    digit_ratio: float
    punctuation_count: int

    def as_vector(self) -> np.ndarray:
        return np.array(
            [
                float(self.word_count),
                float(self.char_count),
                self.avg_word_length,
                self.avg_bigram_length,
                self.avg_trigram_length,
                self.uppercase_ratio,
                self.digit_ratio,
                float(self.punctuation_count),
            ],
            dtype=np.float64,
        )


def _mean_ngram_length(lengths: list[int], n: int) -> float:
    # n-gram length = characters of the n words joined by single spaces
    if len(lengths) < n:
        return 0.0
    window = sum(lengths[:n])
    total = window
    count = 1
    for i in range(n, len(lengths)):
        window += lengths[i] - lengths[i - n]
        total += window
        count += 1
    return (total + (n - 1) * count) / count


def surface_measures(text: str) -> SurfaceMeasures:
    """Whitespace-tokenized surface statistics; total over any string."""
    words = text.split()
    chars = len(text)
    if not words:
        return SurfaceMeasures(0, 0, 0.0, 0.0, 0.0, 0.0, 0.0, 0)
    lengths = [len(w) for w in words]
    upper = sum(1 for c in text if c.isupper())
    digits = sum(1 for c in text if c.isdigit())
    punct = sum(1 for c in text if c in _PUNCT)
    return SurfaceMeasures(
        word_count=len(words),
        char_count=chars,
        avg_word_length=sum(lengths) / len(lengths),
        avg_bigram_length=_mean_ngram_length(lengths, 2),
        avg_trigram_length=_mean_ngram_length(lengths, 3),
        uppercase_ratio=upper / chars,
        digit_ratio=digits / chars,
        punctuation_count=punct,
    )


def surface_measure_matrix(texts) -> np.ndarray:
    """Stack surface measures for a sequence of texts, MEASURE_NAMES order."""
    return np.stack([surface_measures(t).as_vector() for t in texts])


@dataclass
class SparsityReport:
    min_fraction: float
    feature_names: list[str]
    nonzero_fraction: list[float]
    retained: list[str]
    dropped: list[str]

    def to_json(self) -> str:
        return json.dumps(
            {
                "min_fraction": self.min_fraction,
                "features": [
                    {"name": n, "nonzero_fraction": f, "retained": n in set(self.retained)}
                    for n, f in zip(self.feature_names, self.nonzero_fraction)
                ],
                "retained": self.retained,
                "dropped": self.dropped,
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "SparsityReport":
        raw = json.loads(text)
        names = [f["name"] for f in raw["features"]]
        fractions = [f["nonzero_fraction"] for f in raw["features"]]
        return cls(raw["min_fraction"], names, fractions, raw["retained"], raw["dropped"])


class SparsityFilter(ParamsMixin):
    """Drop features whose nonzero fraction is below ``min_fraction``.

    A feature is retained iff (#rows with value != 0) / #rows is at least
    ``min_fraction`` (boundary kept).  Row order never matters.
    """

    def __init__(self, min_fraction: float = 0.01):
        self.min_fraction = min_fraction

    def fit(self, X, feature_names=None):
        if not 0.0 <= self.min_fraction <= 1.0:
            raise ValueError("min_fraction must be in [0, 1]")
        X = as_float_matrix(X)
        if feature_names is None:
            feature_names = [f"f{j}" for j in range(X.shape[1])]
        feature_names = list(feature_names)
        if len(feature_names) != X.shape[1]:
            raise ValueError("feature_names length must match matrix width")
        fractions = np.count_nonzero(X, axis=0) / X.shape[0]
        keep = fractions >= self.min_fraction
        self.feature_names_ = feature_names
        self.nonzero_fraction_ = fractions
        self.retained_idx_ = np.nonzero(keep)[0]
        self.retained_names_ = [feature_names[j] for j in self.retained_idx_]
        self.dropped_names_ = [feature_names[j] for j in np.nonzero(~keep)[0]]
        return self

    def transform(self, X) -> np.ndarray:
        if getattr(self, "retained_idx_", None) is None:
            raise NotFittedError("SparsityFilter is not fitted")
        X = as_float_matrix(X, allow_empty=True)
        check_feature_count(X, len(self.feature_names_))
        return X[:, self.retained_idx_]

    def fit_transform(self, X, feature_names=None) -> np.ndarray:
        return self.fit(X, feature_names).transform(X)

    def report(self) -> SparsityReport:
        if getattr(self, "retained_idx_", None) is None:
            raise NotFittedError("SparsityFilter is not fitted")
        return SparsityReport(
            min_fraction=self.min_fraction,
            feature_names=list(self.feature_names_),
            nonzero_fraction=[float(f) for f in self.nonzero_fraction_],
            retained=list(self.retained_names_),
            dropped=list(self.dropped_names_),
        )

    @classmethod
    def from_report(cls, report: SparsityReport) -> "SparsityFilter":
        filt = cls(report.min_fraction)
        retained = set(report.retained)
        filt.feature_names_ = list(report.feature_names)
        filt.nonzero_fraction_ = np.array(report.nonzero_fraction)
        filt.retained_idx_ = np.array(
            [j for j, n in enumerate(report.feature_names) if n in retained],
            dtype=np.int64,
        )
        filt.retained_names_ = list(report.retained)
        filt.dropped_names_ = list(report.dropped)
        return filt


class ColumnScaler(ParamsMixin):
    """Standardize columns with train-fitted mean and population std.

    Zero-variance columns get scale 1.0, so constants map to exact zeros.
    Test data must be transformed with parameters fitted on training data
    only.
    """

    def __init__(self):
        pass

    def fit(self, X, feature_names=None):
        X = as_float_matrix(X)
        if X.shape[0] < 2:
            raise ValueError("scaler requires at least 2 rows")
        self.mean_ = X.mean(axis=0)
        std = X.std(axis=0)  # population std (ddof=0)
        self.scale_ = np.where(std > 0.0, std, 1.0)
        if feature_names is not None:
            feature_names = list(feature_names)
            if len(feature_names) != X.shape[1]:
                raise ValueError("feature_names length must match matrix width")
        self.feature_names_ = feature_names
        return self

    def transform(self, X) -> np.ndarray:
        if getattr(self, "mean_", None) is None:
            raise NotFittedError("ColumnScaler is not fitted")
        X = as_float_matrix(X, allow_empty=True)
        check_feature_count(X, self.mean_.shape[0])
        return (X - self.mean_) / self.scale_

    def fit_transform(self, X, feature_names=None) -> np.ndarray:
        return self.fit(X, feature_names).transform(X)

    def to_json(self) -> str:
        if getattr(self, "mean_", None) is None:
            raise NotFittedError("ColumnScaler is not fitted")
        return json.dumps(
            {
                "features": self.feature_names_,
                "mean": [float(v) for v in self.mean_],
                "scale": [float(v) for v in self.scale_],
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "ColumnScaler":
        raw = json.loads(text)
        scaler = cls()
        scaler.mean_ = np.array(raw["mean"], dtype=np.float64)
        scaler.scale_ = np.array(raw["scale"], dtype=np.float64)
        scaler.feature_names_ = raw["features"]
        if np.any(scaler.scale_ <= 0):
            raise ValueError("scale values must be positive")
        return scaler
