"""Hot reachability kernels for live-arc cascade simulation.

Two interchangeable backends compute the same thing: given a CSR subgraph
and a boolean live-arc mask, extend an active-node bitmap with everything
reachable from a frontier through live arcs.

The numba backend is the default; set PMCSN_NUMBA=0 to force the pure-numpy
frontier implementation. Both produce bit-identical active bitmaps (the
reachable set does not depend on traversal order). `benchmarks/kernel_bench.py`
compares the two.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = ["reach", "reach_numpy", "reach_numba", "BACKEND", "HAVE_NUMBA"]

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

_use_numba = HAVE_NUMBA and os.environ.get("PMCSN_NUMBA", "1") != "0"
BACKEND = "numba" if _use_numba else "numpy"


def _reach_impl(indptr, indices, live, frontier, active):
    # Plain worklist BFS over live arcs; compiled by numba when enabled.
    n = active.shape[0]
    queue = np.empty(n, dtype=np.int64)
    head = 0
    tail = 0
    for i in range(frontier.shape[0]):
        u = frontier[i]
        if active[u] == 0:
            active[u] = 1
            queue[tail] = u
            tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        for a in range(indptr[u], indptr[u + 1]):
            if live[a]:
                v = indices[a]
                if active[v] == 0:
                    active[v] = 1
                    queue[tail] = v
                    tail += 1


if HAVE_NUMBA:
    _reach_numba_impl = numba.njit(cache=True)(_reach_impl)
else:  # pragma: no cover
    _reach_numba_impl = None


def reach_numba(indptr, indices, live, frontier, active):
    if _reach_numba_impl is None:  # pragma: no cover
        raise RuntimeError("numba backend unavailable")
    _reach_numba_impl(indptr, indices, live, frontier, active)
    return active


def reach_numpy(indptr, indices, live, frontier, active):
    """Vectorized frontier expansion; same result as the numba worklist."""
    frontier = frontier[active[frontier] == 0]
    active[frontier] = 1
    counts = indptr[frontier + 1] - indptr[frontier]
    while frontier.size:
        total = int(counts.sum())
        if total == 0:
            break
        # flatten all outgoing arc positions of the frontier
        offsets = np.repeat(indptr[frontier], counts)
        within = np.arange(total, dtype=np.int64) - np.repeat(
            np.cumsum(counts) - counts, counts)
        arcs = offsets + within
        targets = indices[arcs[live[arcs]]]
        targets = np.unique(targets)
        frontier = targets[active[targets] == 0]
        active[frontier] = 1
        counts = indptr[frontier + 1] - indptr[frontier]
    return active


reach = reach_numba if _use_numba else reach_numpy
