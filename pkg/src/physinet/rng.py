"""Deterministic pseudorandom number generation.

Every random quantity in this package (dataset sampling, weight
initialization, epoch shuffling) comes from the generator below, so a run
is a pure function of its seed on any platform.

Algorithm: splitmix64.  The 64-bit state advances by the golden-ratio
increment 0x9E3779B97F4A7C15 on every draw and the output is the standard
three-stage xor-shift/multiply finalizer (constants 0xBF58476D1CE4E5B9 and
0x94D049BB133111EB).  Uniform doubles take the top 53 bits of a word:
u = (word >> 11) * 2**-53, giving values in [0, 1).

Normal variates use the Box-Muller transform without caching: each call
consumes exactly two raw words (u1, u2) and returns

    z = sqrt(-2 * ln(1 - u1)) * cos(2 * pi * u2)

The sine partner is discarded so the stream layout stays one-call,
two-words, always.

Permutations are the stable argsort of n consecutive uniform draws, so a
permutation consumes exactly n words.
"""

from __future__ import annotations

import math

import numpy as np

_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_MASK = 0xFFFFFFFFFFFFFFFF

_U53 = 2.0 ** -53
_TWO_PI = 2.0 * math.pi


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


class Rng:
    """splitmix64 stream with uniform/normal/permutation draws.

    One instance owns one stream; never share an instance between
    concurrent runs.
    """

    def __init__(self, seed: int):
        self._state = int(seed) & _MASK

    def next_u64(self) -> int:
        """Advance the state by one step and return the next raw word."""
        self._state = (self._state + _GAMMA) & _MASK
        return _mix(self._state)

    def raw(self, n: int) -> np.ndarray:
        """Next n raw words as a uint64 array (vectorized scalar path)."""
        steps = np.arange(1, n + 1, dtype=np.uint64)
        z = np.uint64(self._state) + np.uint64(_GAMMA) * steps
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        z = z ^ (z >> np.uint64(31))
        self._state = (self._state + n * _GAMMA) & _MASK
        return z

    @staticmethod
    def _to_unit(words: np.ndarray) -> np.ndarray:
        return (words >> np.uint64(11)).astype(np.float64) * _U53

    def uniform(self, low: float = 0.0, high: float = 1.0) -> float:
        """One uniform double in [low, high); consumes one word."""
        u = (self.next_u64() >> 11) * _U53
        return low + (high - low) * u

    def uniforms(self, n: int, low: float = 0.0, high: float = 1.0) -> np.ndarray:
        """n uniform doubles in [low, high); consumes n words."""
        return low + (high - low) * self._to_unit(self.raw(n))

    def normal(self, mean: float = 0.0, std: float = 1.0) -> float:
        """One normal variate via Box-Muller; consumes two words."""
        u1 = (self.next_u64() >> 11) * _U53
        u2 = (self.next_u64() >> 11) * _U53
        z = math.sqrt(-2.0 * math.log(1.0 - u1)) * math.cos(_TWO_PI * u2)
        return mean + std * z

    def normals(self, n: int, mean: float = 0.0, std: float = 1.0) -> np.ndarray:
        """n normal variates; consumes 2n words (pairs in draw order)."""
        u = self._to_unit(self.raw(2 * n)).reshape(n, 2)
        z = np.sqrt(-2.0 * np.log(1.0 - u[:, 0])) * np.cos(_TWO_PI * u[:, 1])
        return mean + std * z

    def permutation(self, n: int) -> np.ndarray:
        """Permutation of range(n): stable argsort of n uniform draws."""
        return np.argsort(self._to_unit(self.raw(n)), kind="stable")
