"""Seeded synthetic datasets for desk-scale verification.

Real corpus runs are far too large to re-execute casually, so tests and
demos use generated data whose optimal error rate is known in closed form.

:func:`generate_synthetic` draws each row's domain uniformly from a pool of
(domain, pc1) pairs.  Rows whose domain quality exceeds ``high_threshold``
have every numeric-category feature shifted by ``separation / sqrt(k)``
(k = number of numeric features), so the between-class mean distance is
``separation`` regardless of k and the best achievable accuracy is
``Phi(separation / 2)`` (standard normal CDF).  ``separation = 0`` makes
features independent of the domain quality.  Tag-category features are
label-independent sparse counts with a per-column density cycle, which
gives the sparsity filter something to prune.

:func:`make_checkerboard` builds an XOR-like grid task that linear models
cannot solve and that rewards deeper trees.
"""

from __future__ import annotations

import math
from datetime import date

import numpy as np

from .io import HeadlineRecord, RawDataset
from .rng import Xoshiro256StarStar
from .schema import FeatureSchema

DEFAULT_HIGH_THRESHOLD = 0.8163

_WORDS = (
    "markets", "rally", "after", "surprise", "vote", "officials", "say",
    "new", "report", "finds", "climate", "deal", "nears", "final", "stage",
    "local", "team", "wins", "again", "despite", "injury", "setback",
    "economy", "grows", "slower", "than", "expected", "this", "quarter",
    "leaders", "meet", "to", "discuss", "trade", "talks", "ahead", "of",
    "summit", "study", "links", "sleep", "with", "memory", "health",
    "prices", "fall", "as", "supply", "recovers", "storm", "warning",
)

# nonzero densities cycled across tag columns; the 0.004 column lands
# under a 1% sparsity cut so pruning has real work on generated data
_TAG_DENSITIES = (0.65, 0.30, 0.08, 0.004)


def bayes_accuracy(separation: float) -> float:
    """Best achievable accuracy on balanced classes at this separation."""
    return 0.5 * (1.0 + math.erf(separation / 2.0 / math.sqrt(2.0)))


def generate_synthetic(
    n_rows: int,
    schema: FeatureSchema,
    domain_pool,
    years,
    separation: float,
    seed: int,
    *,
    high_threshold: float = DEFAULT_HIGH_THRESHOLD,
) -> RawDataset:
    """Deterministic synthetic dataset; same seed -> bit-identical output."""
    if n_rows < 1:
        raise ValueError("n_rows must be >= 1")
    domain_pool = list(domain_pool)
    if not domain_pool:
        raise ValueError("domain_pool must not be empty")
    years = list(years)
    if not years:
        raise ValueError("years must not be empty")
    if separation < 0:
        raise ValueError("separation must be >= 0")

    numeric_idx = set(schema.indices_for_category("numeric"))
    if separation > 0 and not numeric_idx:
        raise ValueError("separation > 0 requires at least one numeric feature")
    shift = separation / math.sqrt(len(numeric_idx)) if numeric_idx else 0.0

    categories = [c.category for c in schema]
    tag_density = {}
    tag_slot = 0
    for j, cat in enumerate(categories):
        if cat != "numeric":
            tag_density[j] = _TAG_DENSITIES[tag_slot % len(_TAG_DENSITIES)]
            tag_slot += 1

    rng = Xoshiro256StarStar(seed)
    n_pool = len(domain_pool)
    n_years = len(years)
    n_words = len(_WORDS)
    n_features = len(schema)

    records = []
    for i in range(n_rows):
        domain, pc1 = domain_pool[rng.below(n_pool)]
        year = years[rng.below(n_years)]
        month = 1 + rng.below(12)
        day = 1 + rng.below(28)
        count = 3 + rng.below(8)
        text = " ".join(_WORDS[rng.below(n_words)] for _ in range(count))
        url = f"https://www.{domain}/story/{i}"

        high = pc1 > high_threshold
        features = np.empty(n_features, dtype=np.float64)
        for j in range(n_features):
            if j in numeric_idx:
                features[j] = rng.normal() + (shift if high else 0.0)
            else:
                if rng.random() < tag_density[j]:
                    features[j] = float(1 + rng.below(4))
                else:
                    features[j] = 0.0
        features.flags.writeable = False
        records.append(HeadlineRecord(url, text, date(year, month, day), features))
    return RawDataset(schema, records)


def default_schema(n_numeric: int = 6, n_tags: int = 8) -> FeatureSchema:
    """Small mixed schema used by tests and the demo CLI config."""
    tag_cats = ("pos", "penn_treebank", "dependency", "ner")
    cols = [(f"tag_{cat}_{i}", cat) for i, cat in enumerate(
        tag_cats[i % len(tag_cats)] for i in range(n_tags)
    )]
    cols += [(f"num_{i}", "numeric") for i in range(n_numeric)]
    return FeatureSchema(cols)


def make_domain_pool(n_high: int, n_low: int, *, high_pc1=0.95, low_pc1=0.3):
    """Domain pool with the given counts above/below the default threshold."""
    pool = [(f"high{i:02d}.com", high_pc1) for i in range(n_high)]
    pool += [(f"low{i:02d}.com", low_pc1) for i in range(n_low)]
    return pool


def make_checkerboard(
    n_rows: int,
    seed: int,
    *,
    grid: int = 8,
    n_redundant: int = 3,
    n_noise: int = 0,
) -> tuple[np.ndarray, np.ndarray]:
    """XOR-like checkerboard task: label = parity of the grid cell.

    Two base coordinates are uniform on [-1, 1); the label is the parity of
    the ``grid x grid`` cell they fall in.  ``n_redundant`` extra columns
    are jittered copies of the base coordinates (so feature-subsampled
    ensemble members usually still see the signal) and ``n_noise`` columns
    are pure noise.  No linear rule beats 0.5 by more than grid-edge
    effects, while deep axis-aligned trees can recover the full pattern.
    """
    rng = Xoshiro256StarStar(seed)
    x0 = rng.uniforms(n_rows) * 2.0 - 1.0
    x1 = rng.uniforms(n_rows) * 2.0 - 1.0
    cell0 = np.floor((x0 + 1.0) / 2.0 * grid).astype(np.int64)
    cell1 = np.floor((x1 + 1.0) / 2.0 * grid).astype(np.int64)
    y = ((cell0 + cell1) % 2).astype(np.int64)

    columns = [x0, x1]
    for r in range(n_redundant):
        base = x0 if r % 2 == 0 else x1
        jitter = rng.normals(n_rows) * (0.02 / grid)
        columns.append(base + jitter)
    for _ in range(n_noise):
        columns.append(rng.normals(n_rows))
    X = np.column_stack(columns)
    return X, y


def make_shifted_gaussians(
    n_rows: int,
    n_features: int,
    separation: float,
    seed: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Balanced two-class Gaussian data with known Bayes accuracy."""
    rng = Xoshiro256StarStar(seed)
    y = np.zeros(n_rows, dtype=np.int64)
    y[rng.sample_without_replacement(n_rows, n_rows // 2)] = 1
    shift = separation / math.sqrt(n_features)
    X = rng.normals(n_rows * n_features).reshape(n_rows, n_features)
    X[y == 1] += shift
    return X, y
