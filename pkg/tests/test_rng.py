"""The generator is a determinism contract: verify it against an independent
numpy-uint64 reimplementation of the same algorithm, then pin frozen outputs
so any accidental change to the stream fails loudly."""

import numpy as np
import pytest

from newsquality.rng import MASK64, Xoshiro256StarStar, derive_seed


def _reference_stream(seed: int, count: int) -> list[int]:
    """Independent xoshiro256** with SplitMix64 seeding, numpy uint64 ops."""
    golden = np.uint64(0x9E3779B97F4A7C15)
    with np.errstate(over="ignore"):
        state = []
        s = np.uint64(seed)
        for _ in range(4):
            s = s + golden
            z = s
            z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
            z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
            state.append(z ^ (z >> np.uint64(31)))
        s0, s1, s2, s3 = state

        def rotl(x, k):
            return (x << np.uint64(k)) | (x >> np.uint64(64 - k))

        out = []
        for _ in range(count):
            out.append(int(rotl(s1 * np.uint64(5), 7) * np.uint64(9)))
            t = s1 << np.uint64(17)
            s2 ^= s0
            s3 ^= s1
            s1 ^= s2
            s0 ^= s3
            s2 ^= t
            s3 = rotl(s3, 45)
        return out


@pytest.mark.parametrize("seed", [0, 1, 42, 2**63, MASK64])
def test_matches_independent_reimplementation(seed):
    rng = Xoshiro256StarStar(seed)
    ours = [rng.next_uint64() for _ in range(200)]
    assert ours == _reference_stream(seed, 200)


def test_frozen_outputs_seed_42():
    # regression pin (values cross-checked against the reimplementation above):
    # any change to the seed-42 stream breaks stored experiment replays
    rng = Xoshiro256StarStar(42)
    assert [rng.next_uint64() for _ in range(4)] == [
        1546998764402558742,
        6990951692964543102,
        12544586762248559009,
        17057574109182124193,
    ]


def test_uniforms_match_scalar_path():
    a = Xoshiro256StarStar(7)
    b = Xoshiro256StarStar(7)
    batch = a.uniforms(100)
    singles = np.array([b.random() for _ in range(100)])
    assert np.array_equal(batch, singles)
    assert np.all((batch >= 0.0) & (batch < 1.0))


def test_below_unbiased_small_range():
    rng = Xoshiro256StarStar(3)
    draws = [rng.below(3) for _ in range(9000)]
    counts = np.bincount(draws, minlength=3)
    assert set(draws) <= {0, 1, 2}
    assert counts.min() > 2700  # ~3000 each

    with pytest.raises(ValueError):
        rng.below(0)


def test_shuffle_and_sampling_are_permutations():
    rng = Xoshiro256StarStar(5)
    perm = rng.permutation(100)
    assert sorted(perm.tolist()) == list(range(100))

    sample = rng.sample_without_replacement(50, 20)
    assert len(set(sample.tolist())) == 20
    assert all(0 <= v < 50 for v in sample)
    with pytest.raises(ValueError):
        rng.sample_without_replacement(5, 6)


def test_normals_moments():
    rng = Xoshiro256StarStar(11)
    z = rng.normals(20000)
    assert abs(z.mean()) < 0.03
    assert abs(z.std() - 1.0) < 0.03


def test_derive_seed_order_and_key_sensitivity():
    assert derive_seed(42, 1, 2) != derive_seed(42, 2, 1)
    assert derive_seed(42, 1) != derive_seed(42, 2)
    assert derive_seed(42, 1) != derive_seed(43, 1)
    # same inputs, same sub-seed
    assert derive_seed(42, 2020) == derive_seed(42, 2020)


def test_same_seed_same_stream():
    a = Xoshiro256StarStar(123)
    b = Xoshiro256StarStar(123)
    assert [a.next_uint64() for _ in range(50)] == [b.next_uint64() for _ in range(50)]
