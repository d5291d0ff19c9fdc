"""Portable deterministic randomness.

Every randomized construction in this package draws from SplitMix64, a
named 64-bit generator with a documented update rule.  Platform RNGs
(``random``, ``numpy.random`` defaults) are never used: the same seed must
reproduce the same graph bit-for-bit on any machine.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1

_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """SplitMix64 stream; ``next_u64`` is the only primitive draw."""

    __slots__ = ("_state",)

    def __init__(self, seed: int) -> None:
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & MASK64
        return z ^ (z >> 31)

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n), rejection sampled (no modulo bias)."""
        if n <= 0:
            raise ValueError("randbelow requires n >= 1")
        limit = MASK64 + 1 - ((MASK64 + 1) % n)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n

    def unit(self) -> float:
        """Float in [0, 1) built from the top 53 bits of one draw."""
        return (self.next_u64() >> 11) * 2.0**-53

    def bernoulli(self, num: int, den: int) -> bool:
        """Exact Bernoulli(num/den) from a single 64-bit draw.

        Compares the draw against num/den scaled to 2^64 in integer
        arithmetic, so the outcome is identical on every platform.
        """
        if den <= 0 or num < 0:
            raise ValueError("bernoulli requires num >= 0 and den >= 1")
        if num >= den:
            return True
        return self.next_u64() * den < num << 64

    def sample_without_replacement(self, n: int, k: int, offset: int = 0) -> list[int]:
        """k distinct integers from [offset, offset+n), partial Fisher-Yates."""
        if k > n:
            raise ValueError(f"cannot sample {k} distinct values from {n}")
        swap: dict[int, int] = {}
        out = []
        for i in range(k):
            j = i + self.randbelow(n - i)
            out.append(offset + swap.get(j, j))
            swap[j] = swap.get(i, i)
        return out

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]


def derive_seed(seed: int, *salts: int) -> int:
    """Derive an independent stream seed from a base seed and salt values.

    Used to hand each trial / construction stage its own stream so that
    adding draws to one stage never perturbs another.
    """
    h = SplitMix64(seed).next_u64()
    for salt in salts:
        h = SplitMix64(h ^ (salt & MASK64)).next_u64()
    return h
