"""Directed graph container and SNAP-style edge list ingestion.

Node ids are remapped to dense 0-based integers in first-appearance order.
Adjacency is stored CSR-style (indptr/indices) so simulation kernels can
index arcs as flat positions 0..m-1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["Graph", "GraphFormatError", "load_edge_list", "degree_stats", "write_edge_list"]


class GraphFormatError(ValueError):
    """Raised for malformed edge-list input; carries the offending line number."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


@dataclass(frozen=True)
class Graph:
    """Immutable directed graph.

    ``indptr``/``indices`` hold out-adjacency in CSR form; within each node's
    slice the neighbor ids are sorted ascending, which fixes a canonical arc
    numbering used by probability tables and diffusion networks.
    """

    n: int
    indptr: np.ndarray          # int64, shape (n+1,)
    indices: np.ndarray         # int32, shape (m,)
    directed: bool              # False if the source file was undirected
    dropped_self_loops: int = 0
    dropped_duplicates: int = 0
    _in_indptr: np.ndarray | None = field(default=None, repr=False, compare=False)
    _in_indices: np.ndarray | None = field(default=None, repr=False, compare=False)

    @property
    def arc_count(self) -> int:
        return int(self.indices.shape[0])

    @property
    def edge_count(self) -> int:
        """Edges as counted in the source: arcs for directed, arc pairs for undirected."""
        return self.arc_count if self.directed else self.arc_count // 2

    @property
    def out_degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def out_neighbors(self, u: int) -> np.ndarray:
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    @property
    def in_degrees(self) -> np.ndarray:
        return np.bincount(self.indices, minlength=self.n)

    @property
    def arc_sources(self) -> np.ndarray:
        """Source node of each arc, aligned with ``indices``."""
        return np.repeat(np.arange(self.n, dtype=np.int32), self.out_degrees)

    def nodes_below_cap(self, ell: int) -> np.ndarray:
        """Nodes with out-degree < ell (they keep all arcs in any diffusion network)."""
        return np.flatnonzero(self.out_degrees < ell)

    def nodes_at_or_above_cap(self, ell: int) -> np.ndarray:
        return np.flatnonzero(self.out_degrees >= ell)

    def total_degrees(self) -> np.ndarray:
        """Distinct-neighbor degree |N_in(u) ∪ N_out(u)| per node.

        For graphs ingested as undirected this equals the undirected degree;
        for directed graphs reciprocal arcs count once.
        """
        src = self.arc_sources.astype(np.int64)
        dst = self.indices.astype(np.int64)
        lo = np.minimum(src, dst)
        hi = np.maximum(src, dst)
        keys = np.unique(lo * self.n + hi)
        a = (keys // self.n).astype(np.int64)
        b = (keys % self.n).astype(np.int64)
        return np.bincount(a, minlength=self.n) + np.bincount(b, minlength=self.n)


def from_arcs(n: int, src: np.ndarray, dst: np.ndarray, directed: bool,
              dropped_self_loops: int = 0) -> Graph:
    """Build a Graph from raw arc arrays, dropping self-loops and duplicates."""
    src = np.asarray(src, dtype=np.int64)
    dst = np.asarray(dst, dtype=np.int64)
    loops = src == dst
    n_loops = int(loops.sum())
    if n_loops:
        src, dst = src[~loops], dst[~loops]
    keys = src * n + dst
    uniq = np.unique(keys)
    n_dup = int(keys.shape[0] - uniq.shape[0])
    src = (uniq // n).astype(np.int32)
    dst = (uniq % n).astype(np.int32)
    # unique keys are sorted, so per-node neighbor lists come out ascending
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, src + 1, 1)
    np.cumsum(indptr, out=indptr)
    return Graph(n=n, indptr=indptr, indices=dst, directed=directed,
                 dropped_self_loops=dropped_self_loops + n_loops,
                 dropped_duplicates=n_dup)


def load_edge_list(path: str, directed: bool = True) -> Graph:
    """Load a whitespace-separated edge list ('#' lines are comments).

    Arbitrary node labels are remapped to 0..n-1 in first-appearance order.
    Undirected inputs are expanded to two arcs per edge. Self-loops and
    duplicate arcs are dropped; the counts are recorded on the Graph.
    """
    label_to_id: dict[str, int] = {}
    src_list: list[int] = []
    dst_list: list[int] = []
    self_loops = 0
    try:
        fh = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise GraphFormatError(f"cannot read {path}: {exc}") from exc
    with fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise GraphFormatError(f"expected two node tokens, got {len(parts)}", line_no)
            ids = []
            for tok in parts:
                i = label_to_id.get(tok)
                if i is None:
                    i = len(label_to_id)
                    label_to_id[tok] = i
                ids.append(i)
            u, v = ids
            if u == v:
                self_loops += 1
                continue
            src_list.append(u)
            dst_list.append(v)
            if not directed:
                src_list.append(v)
                dst_list.append(u)
    n = len(label_to_id)
    if n == 0:
        raise GraphFormatError(f"empty graph in {path}")
    return from_arcs(n, np.array(src_list, dtype=np.int64), np.array(dst_list, dtype=np.int64),
                     directed=directed, dropped_self_loops=self_loops)


def write_edge_list(g: Graph, path: str) -> None:
    """Write the graph back out as a directed arc list (one 'u v' per line)."""
    src = g.arc_sources
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# directed arc list, n={g.n} arcs={g.arc_count}\n")
        if g.directed:
            for u, v in zip(src, g.indices):
                fh.write(f"{u} {v}\n")
        else:
            for u, v in zip(src, g.indices):
                if u < v:
                    fh.write(f"{u} {v}\n")


def degree_stats(g: Graph) -> tuple[int, float]:
    """(max, mean) of the distinct-neighbor degree."""
    deg = g.total_degrees()
    return int(deg.max()), float(deg.mean())
