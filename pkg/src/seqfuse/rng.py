"""Deterministic stream derivation.

Every random stream in the harness is a counter-based Philox generator keyed
by a 64-bit seed derived with splitmix64 from (master_seed, grid_index,
scheme_index, trial_index).  Streams therefore do not depend on execution
order or thread count.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def splitmix64(z: int) -> int:
    """One splitmix64 output step (Steele/Lea/Flood finalizer)."""
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def mix64(*parts: int) -> int:
    """Fold integers into one 64-bit seed: h <- splitmix64(h XOR part)."""
    h = 0
    for p in parts:
        h = splitmix64(h ^ (int(p) & _MASK64))
    return h


def sensor_generator(seed: int, sensor: int) -> np.random.Generator:
    """Philox stream for one sensor inside one trial.

    The 128-bit Philox key is (seed << 64) | sensor, so distinct
    (seed, sensor) pairs index disjoint counter-based streams.
    """
    key = ((int(seed) & _MASK64) << 64) | (int(sensor) & _MASK64)
    return np.random.Generator(np.random.Philox(key=key))


def sensor_generators(seed: int, count: int) -> list[np.random.Generator]:
    return [sensor_generator(seed, k) for k in range(count)]
