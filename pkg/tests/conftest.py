import numpy as np
import pytest

from pmcsn.graph import Graph, from_arcs
from pmcsn.models import CostBenefitTable, EdgeProbabilities
from pmcsn.network import sample_diffusion_network
from pmcsn import rng


def make_graph(n, arcs, directed=True) -> Graph:
    src = np.array([a[0] for a in arcs], dtype=np.int64)
    dst = np.array([a[1] for a in arcs], dtype=np.int64)
    if not directed:
        src, dst = np.concatenate([src, dst]), np.concatenate([dst, src])
    return from_arcs(n, src, dst, directed=directed)


def manual_probs(g, p) -> EdgeProbabilities:
    values = np.full(g.arc_count, p) if np.isscalar(p) else np.asarray(p, dtype=np.float64)
    return EdgeProbabilities(values=values, model="manual")


def uniform_cb(n, cost=1.0, benefit=1.0) -> CostBenefitTable:
    return CostBenefitTable(cost=np.full(n, float(cost)), benefit=np.full(n, float(benefit)),
                            cost_model=f"uniform:{cost}", benefit_model=f"uniform:{benefit}")


def random_tiny_instance(seed, n_max=6, arc_budget=10, p_range=(0.2, 0.8)):
    """A small connected-ish directed graph with mid-range arc probabilities."""
    gen = rng.stream(seed, "tiny-instance")
    n = int(gen.integers(3, n_max + 1))
    arcs = set()
    for _ in range(arc_budget * 2):
        u, v = int(gen.integers(0, n)), int(gen.integers(0, n))
        if u != v:
            arcs.add((u, v))
        if len(arcs) >= arc_budget:
            break
    g = make_graph(n, sorted(arcs))
    p = gen.uniform(*p_range, size=g.arc_count)
    return g, manual_probs(g, p), gen


@pytest.fixture
def chain3():
    """a -> b -> c with p = 0.5 on both arcs."""
    g = make_graph(3, [(0, 1), (1, 2)])
    return g, manual_probs(g, 0.5)


@pytest.fixture
def star5():
    """center 0 -> 4 leaves, p = 1."""
    g = make_graph(5, [(0, i) for i in range(1, 5)])
    return g, manual_probs(g, 1.0)
