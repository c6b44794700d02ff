"""
Portable pseudo-random generators for reproducible starting points.

SplitMix64 derives per-instance seeds; xoshiro256** draws the uniforms.
Both are defined on 64-bit unsigned words, so every result is independent
of platform and of numpy's generator versions.
"""

from typing import List

import numpy as np

MASK64 = (1 << 64) - 1

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3


def fnv1a64(text: str) -> int:
    """Stable 64-bit FNV-1a hash of a UTF-8 string."""
    h = FNV_OFFSET
    for byte in text.encode("utf-8"):
        h ^= byte
        h = (h * FNV_PRIME) & MASK64
    return h


def splitmix64(state: int) -> int:
    """One SplitMix64 output for the given state (the state is advanced first)."""
    z = (state + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Sequential SplitMix64 stream."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        out = splitmix64(self.state)
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        return out


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


class Xoshiro256StarStar:
    """xoshiro256** seeded from a SplitMix64 stream."""

    def __init__(self, seed: int):
        seeder = SplitMix64(seed)
        self.s = [seeder.next() for _ in range(4)]

    def next(self) -> int:
        s = self.s
        result = (_rotl((s[1] * 5) & MASK64, 7) * 9) & MASK64
        t = (s[1] << 17) & MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def uniform(self) -> float:
        """A double in [0, 1) from the top 53 bits."""
        return (self.next() >> 11) * 2.0 ** -53

    def uniforms(self, count: int) -> np.ndarray:
        values: List[float] = [self.uniform() for _ in range(count)]
        return np.array(values, dtype=float)


def instance_seed(master_seed: int, name: str, start_index: int) -> int:
    """Seed of one (function, start) instance."""
    return splitmix64((master_seed ^ fnv1a64(name) ^ start_index) & MASK64)


def uniform_in_box(seed: int, lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    """Coordinate-wise uniform point of [lower, upper]."""
    u = Xoshiro256StarStar(seed).uniforms(len(lower))
    return lower + u * (upper - lower)
