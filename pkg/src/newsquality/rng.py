"""Portable seeded random number generation.

Every stochastic step in this package (undersampling, splits, bootstraps,
weight init, ...) draws from an explicit xoshiro256** stream, so a 64-bit
seed reproduces every selection bit-for-bit across runs, platforms, and
thread counts.  Parallel work units (per-year sampling, ensemble members)
get independent sub-streams via :func:`derive_seed`, which makes results
invariant to scheduling order.

The generator is xoshiro256** 1.0 (Blackman & Vigna), with the four state
words seeded from consecutive SplitMix64 outputs of the user seed.  Doubles
are built from the top 53 bits; bounded integers use rejection sampling so
draws are unbiased; normals use the Marsaglia polar method.  All of these
choices are part of the determinism contract and must not change.
"""

from __future__ import annotations

import math

import numpy as np

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _splitmix64(x: int) -> int:
    """One SplitMix64 output for state ``x`` (already advanced by the caller)."""
    z = x & MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, *keys: int) -> int:
    """Derive a sub-stream seed by mixing integer keys into ``seed``.

    Used for per-year and per-ensemble-member streams: the derived seed
    depends only on (seed, keys), never on execution order.
    """
    h = seed & MASK64
    for k in keys:
        h = _splitmix64(h ^ ((int(k) * _GOLDEN) & MASK64))
    return h


class Xoshiro256StarStar:
    """xoshiro256** stream with convenience draws used across the package."""

    __slots__ = ("_s0", "_s1", "_s2", "_s3", "_spare_normal")

    def __init__(self, seed: int):
        s = seed & MASK64
        state = []
        for _ in range(4):
            s = (s + _GOLDEN) & MASK64
            state.append(_splitmix64(s))
        self._s0, self._s1, self._s2, self._s3 = state
        self._spare_normal: float | None = None

    def next_uint64(self) -> int:
        s0, s1, s2, s3 = self._s0, self._s1, self._s2, self._s3
        r = (s1 * 5) & MASK64
        result = (((r << 7) | (r >> 57)) & MASK64) * 9 & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        self._s0, self._s1, self._s2 = s0, s1, s2
        self._s3 = ((s3 << 45) | (s3 >> 19)) & MASK64
        return result

    def random(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_uint64() >> 11) * 1.1102230246251565e-16  # 2**-53

    def below(self, n: int) -> int:
        """Unbiased integer in [0, n) via rejection sampling."""
        if n <= 0:
            raise ValueError("below() requires n >= 1")
        limit = MASK64 + 1 - (MASK64 + 1) % n
        while True:
            v = self.next_uint64()
            if v < limit:
                return v % n

    def integers_below(self, n: int, size: int) -> np.ndarray:
        """``size`` unbiased integers in [0, n) as int64."""
        out = np.empty(size, dtype=np.int64)
        below = self.below
        for i in range(size):
            out[i] = below(n)
        return out

    def uniforms(self, size: int) -> np.ndarray:
        """``size`` uniform doubles in [0, 1)."""
        out = np.empty(size, dtype=np.float64)
        s0, s1, s2, s3 = self._s0, self._s1, self._s2, self._s3
        for i in range(size):
            r = (s1 * 5) & MASK64
            result = (((r << 7) | (r >> 57)) & MASK64) * 9 & MASK64
            t = (s1 << 17) & MASK64
            s2 ^= s0
            s3 ^= s1
            s1 ^= s2
            s0 ^= s3
            s2 ^= t
            s3 = ((s3 << 45) | (s3 >> 19)) & MASK64
            out[i] = (result >> 11) * 1.1102230246251565e-16
        self._s0, self._s1, self._s2, self._s3 = s0, s1, s2, s3
        return out

    def normal(self) -> float:
        """Standard normal via the Marsaglia polar method (pairs cached)."""
        spare = self._spare_normal
        if spare is not None:
            self._spare_normal = None
            return spare
        while True:
            u = 2.0 * self.random() - 1.0
            v = 2.0 * self.random() - 1.0
            s = u * u + v * v
            if 0.0 < s < 1.0:
                m = math.sqrt(-2.0 * math.log(s) / s)
                self._spare_normal = v * m
                return u * m

    def normals(self, size: int) -> np.ndarray:
        out = np.empty(size, dtype=np.float64)
        normal = self.normal
        for i in range(size):
            out[i] = normal()
        return out

    def shuffle(self, values: np.ndarray) -> None:
        """In-place Fisher-Yates shuffle (backward, one swap per draw)."""
        below = self.below
        for i in range(len(values) - 1, 0, -1):
            j = below(i + 1)
            values[i], values[j] = values[j], values[i]

    def permutation(self, n: int) -> np.ndarray:
        idx = np.arange(n, dtype=np.int64)
        self.shuffle(idx)
        return idx

    def sample_without_replacement(self, n: int, k: int) -> np.ndarray:
        """``k`` distinct integers from [0, n): partial Fisher-Yates, unsorted."""
        if not 0 <= k <= n:
            raise ValueError(f"cannot sample {k} of {n} without replacement")
        pool = np.arange(n, dtype=np.int64)
        below = self.below
        for i in range(k):
            j = i + below(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k].copy()
