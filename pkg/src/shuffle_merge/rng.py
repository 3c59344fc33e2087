"""Deterministic pseudo-random generation for the experiment harness.

The generator is SplitMix64: 64-bit state advanced by the golden-ratio
increment, output produced by two xor-shift-multiply finalization rounds.
It is fully specified here so runs are reproducible across machines and
languages. The stream for state s is out[i] = finalize(s + (i+1)*GOLDEN),
which the vectorized helpers exploit (any window of the stream can be
computed in closed form).

Bounded integers use the Lemire multiply-shift reduction
floor(word * bound / 2**64) without rejection; for the bounds used here
(< 2**32) the bias is far below statistical resolution, and the method is
pinned for cross-implementation determinism.
"""

from __future__ import annotations

import numpy as np

from .errors import require

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _finalize(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Scalar reference generator."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return _finalize(self.state)

    def next_below(self, bound: int) -> int:
        """Uniform integer in [0, bound) via Lemire reduction."""
        require(0 < bound < (1 << 32), "bound must be in [1, 2**32)")
        return (self.next_u64() * bound) >> 64


def mix64(*values: int) -> int:
    """Mix integers into one 64-bit seed (state = finalize(state + GOLDEN + v) per value)."""
    acc = 0
    for v in values:
        acc = _finalize((acc + GOLDEN + (v & MASK64)) & MASK64)
    return acc


def splitmix64_stream(seed: int, start: int, count: int) -> np.ndarray:
    """uint64 outputs [start, start+count) of the stream for `seed`, vectorized."""
    require(start >= 0 and count >= 0, "stream window must be non-negative")
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    z = (np.uint64(seed & MASK64) + idx * np.uint64(GOLDEN))
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


def bounded(words: np.ndarray, bound: int) -> np.ndarray:
    """Lemire reduction of uint64 words to [0, bound), matching SplitMix64.next_below."""
    require(0 < bound < (1 << 32), "bound must be in [1, 2**32)")
    b = np.uint64(bound)
    hi = words >> np.uint64(32)
    lo = words & np.uint64(0xFFFFFFFF)
    return (hi * b + ((lo * b) >> np.uint64(32))) >> np.uint64(32)
