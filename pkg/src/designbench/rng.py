"""Deterministic pseudo-random streams.

SplitMix64 turns an arbitrary tuple of integer keys into a 256-bit
xoshiro256++ state; Gaussian draws use the Box-Muller transform. The whole
stack is integer-exact, so two processes (or two languages) seeded with the
same keys produce bit-identical streams.
"""

from __future__ import annotations

import math

_MASK = 0xFFFFFFFFFFFFFFFF


def splitmix64(x: int) -> int:
    """One SplitMix64 step: returns the next 64-bit output for state ``x``."""
    z = (x + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def derive_seed(*keys: int) -> int:
    """Mix integer keys into one 64-bit seed (order-sensitive)."""
    acc = 0x9E3779B97F4A7C15
    for k in keys:
        acc = splitmix64((acc ^ (k & _MASK)) & _MASK)
    return acc


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK


class Xoshiro256PP:
    """xoshiro256++ counter stream seeded via SplitMix64."""

    def __init__(self, *keys: int):
        seed = derive_seed(*keys) if keys else 0
        s = []
        for _ in range(4):
            seed = (seed + 0x9E3779B97F4A7C15) & _MASK
            s.append(splitmix64(seed))
        self._s = s
        self._gauss_cache: float | None = None

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s
        result = (_rotl((s0 + s3) & _MASK, 23) + s0) & _MASK
        t = (s1 << 17) & _MASK
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return result

    def uniform(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.next_u64() >> 11) * (2.0**-53)

    def uniforms(self, n: int) -> list[float]:
        return [self.uniform() for _ in range(n)]

    def randint_below(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        if n <= 0:
            raise ValueError("n must be positive")
        return int(self.uniform() * n)

    def normal(self, mu: float = 0.0, sigma: float = 1.0) -> float:
        """Gaussian draw via Box-Muller (second value cached)."""
        if self._gauss_cache is not None:
            z = self._gauss_cache
            self._gauss_cache = None
        else:
            # u1 in (0, 1] so log() is finite.
            u1 = (self.next_u64() >> 11) * (2.0**-53) + 2.0**-54
            u2 = self.uniform()
            r = math.sqrt(-2.0 * math.log(u1))
            z = r * math.cos(2.0 * math.pi * u2)
            self._gauss_cache = r * math.sin(2.0 * math.pi * u2)
        return mu + sigma * z

    def normals(self, n: int) -> list[float]:
        return [self.normal() for _ in range(n)]

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randint_below(i + 1)
            items[i], items[j] = items[j], items[i]
