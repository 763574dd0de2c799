"""Deterministic random stream used by every sampler and report.

A fixed 64-bit linear congruential generator keeps sampled checks
reproducible across platforms; reports quote only the seed.
"""
from __future__ import annotations

_MULT = 6364136223846793005
_INC = 1442695040888963407
_MASK = (1 << 64) - 1


class Lcg64:
    """64-bit LCG; draws take the high 31 bits of the state."""

    __slots__ = ("state",)

    def __init__(self, seed: int = 0):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state * _MULT + _INC) & _MASK
        return self.state

    def below(self, n: int) -> int:
        """Uniform-ish draw in [0, n). n must be positive and small (< 2**31)."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        return (self.next_u64() >> 33) % n

    def randint(self, lo: int, hi: int) -> int:
        """Draw in the inclusive range [lo, hi]."""
        return lo + self.below(hi - lo + 1)

    def choice(self, seq):
        if not seq:
            raise ValueError("choice() from an empty sequence")
        return seq[self.below(len(seq))]
