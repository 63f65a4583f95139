"""Deterministic seed derivation and random generators.

Streams are identified by a base seed plus an integer path (replication
number, substream tag). Each path component passes through a splitmix64
avalanche step, so derived seeds are unrelated even for adjacent inputs
and a stream's identity never depends on scheduling or grid composition.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1

# substream tag for additive output noise; input sampling uses the bare
# replication seed, so noisy and noise-free runs share input draws
NOISE_STREAM = 0x9E37

__all__ = ["NOISE_STREAM", "generator", "mix_seed", "splitmix64"]


def splitmix64(state: int) -> int:
    """One splitmix64 output step (standard public-domain constants)."""
    z = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def mix_seed(base_seed: int, *path: int) -> int:
    """Fold an integer path into ``base_seed``, returning a 64-bit seed."""
    s = splitmix64(base_seed & _MASK64)
    for part in path:
        s = splitmix64(s ^ (part & _MASK64))
    return s


def generator(seed: int) -> np.random.Generator:
    """PCG64 generator for an already-mixed seed; byte-stable per seed."""
    return np.random.Generator(np.random.PCG64(seed & _MASK64))
