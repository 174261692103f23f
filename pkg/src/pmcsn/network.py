"""Diffusion networks: out-degree-capped subgraphs of a social graph.

A diffusion network keeps, for every node, at most `ell` of its outgoing
arcs; nodes below the cap keep everything. The family of all such subgraphs
is what uniform sampling, counting and enumeration range over.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph

__all__ = [
    "DiffusionNetwork",
    "sample_diffusion_network",
    "build_top_degree_network",
    "count_diffusion_networks",
    "enumerate_diffusion_networks",
    "validate_diffusion_network",
]


@dataclass(frozen=True)
class DiffusionNetwork:
    """A capped subgraph, stored as its own CSR plus the kept parent-arc ids."""

    parent: Graph
    ell: int
    kept: np.ndarray            # int64 positions into the parent arc arrays, sorted
    indptr: np.ndarray          # int64, shape (n+1,)
    indices: np.ndarray         # int32

    @property
    def n(self) -> int:
        return self.parent.n

    @property
    def arc_count(self) -> int:
        return int(self.indices.shape[0])

    @property
    def out_degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def arc_probabilities(self, probs) -> np.ndarray:
        """Probability per retained arc, aligned with this network's CSR."""
        return probs.values[self.kept]

    def arc_list(self) -> list[tuple[int, int]]:
        src = np.repeat(np.arange(self.n), self.out_degrees)
        return [(int(u), int(v)) for u, v in zip(src, self.indices)]

    def to_json(self, path: str) -> None:
        doc = {"version": 1, "kind": "diffusion-network", "ell": self.ell,
               "n": self.n, "arcs": self.arc_list()}
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh)


def _from_kept(g: Graph, ell: int, kept: np.ndarray) -> DiffusionNetwork:
    kept = np.sort(np.asarray(kept, dtype=np.int64))
    src = g.arc_sources[kept]
    indptr = np.zeros(g.n + 1, dtype=np.int64)
    np.add.at(indptr, src + 1, 1)
    np.cumsum(indptr, out=indptr)
    return DiffusionNetwork(parent=g, ell=ell, kept=kept,
                            indptr=indptr, indices=g.indices[kept])


def sample_diffusion_network(g: Graph, ell: int, rng: np.random.Generator) -> DiffusionNetwork:
    """Uniformly random capped subgraph: independent uniform ell-subsets per node."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    kept_parts = []
    indptr = g.indptr
    for u in range(g.n):
        lo, hi = int(indptr[u]), int(indptr[u + 1])
        d = hi - lo
        if d <= ell:
            if d:
                kept_parts.append(np.arange(lo, hi, dtype=np.int64))
        else:
            picks = rng.permutation(d)[:ell]
            kept_parts.append(lo + np.sort(picks.astype(np.int64)))
    kept = np.concatenate(kept_parts) if kept_parts else np.empty(0, dtype=np.int64)
    return _from_kept(g, ell, kept)


def build_top_degree_network(g: Graph, ell: int) -> DiffusionNetwork:
    """Keep, per node, the arcs to its ell highest-degree out-neighbors.

    Degree metric: out-degree for directed graphs, distinct-neighbor degree
    for graphs ingested as undirected. Ties break toward the lower node id.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    deg = g.out_degrees if g.directed else g.total_degrees()
    kept_parts = []
    indptr = g.indptr
    for u in range(g.n):
        lo, hi = int(indptr[u]), int(indptr[u + 1])
        d = hi - lo
        if d <= ell:
            if d:
                kept_parts.append(np.arange(lo, hi, dtype=np.int64))
        else:
            nbrs = g.indices[lo:hi]
            # neighbors are id-sorted, so a stable sort on -degree realizes the tie-break
            order = np.argsort(-deg[nbrs], kind="stable")[:ell]
            kept_parts.append(lo + np.sort(order.astype(np.int64)))
    kept = np.concatenate(kept_parts) if kept_parts else np.empty(0, dtype=np.int64)
    return _from_kept(g, ell, kept)


def count_diffusion_networks(g: Graph, ell: int) -> int:
    """|{capped subgraphs}| = product over capped nodes of C(d_out, ell)."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    total = 1
    for d in g.out_degrees:
        if d >= ell:
            total *= math.comb(int(d), ell)
    return total


def enumerate_diffusion_networks(g: Graph, ell: int, cap: int = 100_000):
    """Yield every capped subgraph once, in canonical lexicographic order."""
    size = count_diffusion_networks(g, ell)
    if size > cap:
        raise ValueError(f"enumeration would produce {size} networks (cap {cap})")
    per_node = []
    indptr = g.indptr
    for u in range(g.n):
        lo, hi = int(indptr[u]), int(indptr[u + 1])
        d = hi - lo
        if d <= ell:
            per_node.append([tuple(range(lo, hi))])
        else:
            per_node.append(list(itertools.combinations(range(lo, hi), ell)))
    for combo in itertools.product(*per_node):
        kept = np.array([a for part in combo for a in part], dtype=np.int64)
        yield _from_kept(g, ell, kept)


def validate_diffusion_network(g: Graph, net: DiffusionNetwork, ell: int) -> str | None:
    """None if `net` is a valid capped subgraph of `g`, else a violation message."""
    if net.n != g.n:
        return f"node count mismatch: {net.n} != {g.n}"
    kept = net.kept
    if kept.size:
        if kept.min() < 0 or kept.max() >= g.arc_count:
            return "kept arc index out of range"
        if np.unique(kept).size != kept.size:
            return "duplicate kept arc"
    if not np.array_equal(g.indices[kept], net.indices):
        return "network CSR does not match kept parent arcs"
    net_deg = net.out_degrees
    full_deg = g.out_degrees
    for u in range(g.n):
        if net_deg[u] > ell:
            return f"node {u}: retained out-degree {int(net_deg[u])} exceeds cap {ell}"
        if full_deg[u] < ell and net_deg[u] != full_deg[u]:
            return f"node {u}: below-cap node must retain all {int(full_deg[u])} arcs"
        if full_deg[u] >= ell and net_deg[u] != ell:
            return f"node {u}: capped node must retain exactly {ell} arcs"
    return None
