"""
Named random sub-streams derived from one master seed.

Every consumer of randomness (fold splits, parameter initialization, epoch
shuffling, negative sampling) gets its own seed, so one component can be held
fixed while another varies.
"""

import numpy as np

STREAM_NAMES = ("split", "init", "shuffle", "sampling")


def stream_seed(seed: int, name: str) -> int:
    """
    Deterministic integer seed of the named sub-stream.

    Args:
        seed: Master seed (nonnegative)
        name: One of STREAM_NAMES

    Returns:
        64-bit seed, stable across runs and platforms
    """
    if name not in STREAM_NAMES:
        raise ValueError(f"unknown random stream '{name}' (expected one of {STREAM_NAMES})")
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(STREAM_NAMES.index(name),))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def stream_rng(seed: int, name: str) -> np.random.Generator:
    return np.random.default_rng(stream_seed(seed, name))
