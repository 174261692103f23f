"""Deterministic RNG stream derivation.

Every random draw in the library comes from a stream derived from
(master seed, purpose label, indices...) so results are reproducible and
independent of execution order.
"""

import zlib

import numpy as np

__all__ = ["seed_sequence", "stream", "child_seed"]


def _label_code(label: str) -> int:
    return zlib.crc32(label.encode("utf-8"))


def seed_sequence(master_seed: int, label: str, *indices: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([int(master_seed), _label_code(label), *[int(i) for i in indices]])


def stream(master_seed: int, label: str, *indices: int) -> np.random.Generator:
    """A generator unique to (master_seed, label, indices)."""
    return np.random.default_rng(seed_sequence(master_seed, label, *indices))


def child_seed(master_seed: int, label: str, *indices: int) -> int:
    """A derived integer seed, for handing a sub-computation its own master seed."""
    return int(seed_sequence(master_seed, label, *indices).generate_state(1, np.uint64)[0])
