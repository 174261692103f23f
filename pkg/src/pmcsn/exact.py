"""Brute-force ground truth at desk scale.

Exact expectations enumerate every live-arc world (2^arcs per network) and,
where asked, every capped subgraph. Guards fail loudly instead of
truncating: a wrong oracle is worse than no oracle.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .models import CostBenefitTable, EdgeProbabilities
from .network import (DiffusionNetwork, count_diffusion_networks,
                      enumerate_diffusion_networks)

__all__ = ["ExactResult", "exact_benefit", "exact_expected_benefit", "exact_optimum"]

MAX_WORLD_ARCS = 20
MAX_OPTIMUM_NODES = 12


@dataclass(frozen=True)
class ExactResult:
    value: float
    worlds: int                 # live-arc worlds enumerated
    networks: int               # capped subgraphs enumerated
    fingerprint: str


def _fingerprint(net: DiffusionNetwork, seeds) -> str:
    return f"n={net.n};ell={net.ell};arcs={net.arc_count};S={sorted(int(s) for s in seeds)}"


def _world_reach(adj: list[list[tuple[int, int]]], live_bits: int, seeds) -> list[int]:
    seen = set(seeds)
    stack = list(seeds)
    while stack:
        u = stack.pop()
        for arc_pos, v in adj[u]:
            if (live_bits >> arc_pos) & 1 and v not in seen:
                seen.add(v)
                stack.append(v)
    return sorted(seen)


def exact_benefit(net: DiffusionNetwork, probs: EdgeProbabilities,
                  cb: CostBenefitTable, seeds) -> ExactResult:
    """Exact expected benefit on one network, by full live-arc enumeration."""
    m = net.arc_count
    if m > MAX_WORLD_ARCS:
        raise ValueError(f"{m} arcs exceeds the enumeration guard ({MAX_WORLD_ARCS})")
    seeds = sorted(set(int(s) for s in seeds))
    if any(s < 0 or s >= net.n for s in seeds):
        raise ValueError("seed node id out of range")
    fp = _fingerprint(net, seeds)
    if not seeds:
        return ExactResult(0.0, 2 ** m, 1, fp)
    p = net.arc_probabilities(probs)
    q = 1.0 - p
    src = np.repeat(np.arange(net.n), net.out_degrees)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(net.n)]
    for pos, (u, v) in enumerate(zip(src, net.indices)):
        adj[int(u)].append((pos, int(v)))
    b = cb.benefit
    terms = []
    check = []
    for world in range(2 ** m):
        w = 1.0
        for a in range(m):
            w *= p[a] if (world >> a) & 1 else q[a]
        reached = _world_reach(adj, world, seeds)
        terms.append(w * math.fsum(b[u] for u in reached))
        check.append(w)
    assert abs(math.fsum(check) - 1.0) < 1e-12
    return ExactResult(math.fsum(terms), 2 ** m, 1, fp)


def exact_expected_benefit(g: Graph, ell: int, probs: EdgeProbabilities,
                           cb: CostBenefitTable, seeds, cap: int = 10_000) -> ExactResult:
    """Exact benefit averaged uniformly over every capped subgraph of g."""
    count = count_diffusion_networks(g, ell)
    if count > cap:
        raise ValueError(f"{count} diffusion networks exceeds cap {cap}")
    vals = []
    worlds = 0
    for net in enumerate_diffusion_networks(g, ell, cap=cap):
        res = exact_benefit(net, probs, cb, seeds)
        vals.append(res.value)
        worlds += res.worlds
    value = math.fsum(vals) / len(vals)
    fp = f"n={g.n};ell={ell};alpha={count};S={sorted(int(s) for s in seeds)}"
    return ExactResult(value, worlds, count, fp)


def _feasible_subsets(cost: np.ndarray, budget: float):
    """All budget-feasible subsets as sorted tuples, in lexicographic order."""
    n = cost.shape[0]
    out: list[tuple[int, ...]] = []

    def extend(prefix: tuple[int, ...], start: int, remaining: float):
        out.append(prefix)
        for u in range(start, n):
            if cost[u] <= remaining + 1e-12:
                extend(prefix + (u,), u + 1, remaining - float(cost[u]))

    extend((), 0, float(budget))
    return out


def exact_optimum(g: Graph, ell: int, probs: EdgeProbabilities, cb: CostBenefitTable,
                  budget: float, alpha_cap: int = 10_000):
    """Exhaustive maximization of exact profit over (seed set, capped subgraph).

    Returns (seed tuple, DiffusionNetwork, profit). Ties go to the
    lexicographically smallest seed set, then to the canonical network order.
    """
    if g.n > MAX_OPTIMUM_NODES:
        raise ValueError(f"n={g.n} exceeds the exhaustive-search guard ({MAX_OPTIMUM_NODES})")
    subsets = _feasible_subsets(cb.cost, budget)
    nets = list(enumerate_diffusion_networks(g, ell, cap=alpha_cap))
    best_phi = -math.inf
    best: tuple[tuple[int, ...], DiffusionNetwork] | None = None
    for s in subsets:
        c_s = cb.cost_of(s)
        for net in nets:
            phi = exact_benefit(net, probs, cb, s).value - c_s
            if phi > best_phi + 1e-15:
                best_phi = phi
                best = (s, net)
    assert best is not None  # the empty set is always feasible
    return best[0], best[1], best_phi
