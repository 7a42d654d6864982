"""Counter-based random number generation (SplitMix64 in counter mode).

Every random draw in the simulator is a pure function of a 64-bit key and
a 64-bit counter: draw ``n`` of stream ``key`` is
``mix64(key + (n + 1) * GOLDEN)`` pushed through the usual 53-bit uniform
conversion.  This makes streams splittable (a trial's stream is derived
from the run seed and the trial index alone), bit-stable across platforms,
and trivially vectorizable: there is no sequential generator state.

Two implementations are kept in lockstep and cross-checked by tests:
a pure-Python one on masked ints (used by the scalar walk) and a numpy
one on ``uint64`` arrays (used by the batch walk).  numpy integer
scalars warn on overflow, so scalar work stays in Python ints.
"""

from __future__ import annotations

import numpy as np

RNG_NAME = "splitmix64-counter"

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

_G_U64 = np.uint64(_GOLDEN)
_M1_U64 = np.uint64(_MIX1)
_M2_U64 = np.uint64(_MIX2)
_ONE_U64 = np.uint64(1)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_INV53 = 2.0 ** -53


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a Python int, reduced mod 2**64."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return (z ^ (z >> 31)) & _MASK


def normalize_seed(seed: int) -> int:
    """Map any Python int (including negatives) to its 64-bit residue."""
    return int(seed) & _MASK


def uniform_at(key: int, counter: int) -> float:
    """Scalar uniform in [0, 1): draw ``counter`` of stream ``key``."""
    z = mix64(key + (counter + 1) * _GOLDEN)
    return (z >> 11) * _INV53


def trial_seed(seed: int, trial: int) -> int:
    """Stream key for one trial: ``seed XOR mix64((trial + 1) * GOLDEN)``.

    ``mix64`` is a bijection and the arguments are distinct, so trial
    keys never collide for a fixed run seed.
    """
    return normalize_seed(seed) ^ mix64(((trial + 1) * _GOLDEN) & _MASK)


def mix64_u64(z: np.ndarray) -> np.ndarray:
    """Vectorized SplitMix64 finalizer on a uint64 array."""
    z = (z ^ (z >> _S30)) * _M1_U64
    z = (z ^ (z >> _S27)) * _M2_U64
    return z ^ (z >> _S31)


def uniforms_u64(keys: np.ndarray, counters: np.ndarray) -> np.ndarray:
    """Vectorized uniforms in [0, 1), one per (key, counter) pair."""
    z = keys + (counters + _ONE_U64) * _G_U64
    return (mix64_u64(z) >> _S11).astype(np.float64) * _INV53


def trial_seeds_u64(seed: int, start: int, count: int) -> np.ndarray:
    """Stream keys for trials ``start .. start + count - 1`` as uint64."""
    ks = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    return np.uint64(normalize_seed(seed)) ^ mix64_u64(ks * _G_U64)
