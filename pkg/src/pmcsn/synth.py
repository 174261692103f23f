"""Deterministic synthetic social graphs.

Used by the benchmark harness and the test suite when the public datasets
are not on disk. Out-degrees follow a truncated power law; targets are drawn
with popularity weights so the in-degree distribution is heavy-tailed.
"""

from __future__ import annotations

import numpy as np

from . import rng
from .graph import Graph, from_arcs

__all__ = ["synthetic_social"]


def synthetic_social(n: int = 1000, avg_out_degree: float = 25.0, seed: int = 0,
                     min_out_degree: int = 4, max_out_degree: int = 80,
                     popularity_exponent: float = 0.9) -> Graph:
    """A directed graph with ~n*avg_out_degree arcs, reproducible from seed."""
    if n < 2:
        raise ValueError("need at least 2 nodes")
    gen = rng.stream(seed, "synth")

    raw = gen.pareto(1.6, size=n) + 1.0
    deg = np.clip((raw * avg_out_degree / raw.mean()).astype(np.int64),
                  min_out_degree, max_out_degree)

    # popularity ranks are shuffled so node id carries no meaning
    weights = (np.arange(1, n + 1, dtype=np.float64)) ** (-popularity_exponent)
    weights = gen.permutation(weights)
    weights /= weights.sum()

    src_parts = []
    dst_parts = []
    for u in range(n):
        d = int(deg[u])
        # oversample with replacement, then dedupe; loops/dupes are dropped anyway
        targets = np.unique(gen.choice(n, size=2 * d, replace=True, p=weights))
        targets = targets[targets != u][:d]
        src_parts.append(np.full(targets.shape[0], u, dtype=np.int64))
        dst_parts.append(targets.astype(np.int64))
    return from_arcs(n, np.concatenate(src_parts), np.concatenate(dst_parts), directed=True)
