"""Budgeted seed selection: sampling-based search, marginal-gain heuristic,
and the Random / High-Degree baselines, plus the sample-size calculator."""

from __future__ import annotations

import dataclasses
import json
import math
import time
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import rng
from ._kernels import reach
from .diffusion import SpreadEstimate, estimate_benefit, estimate_profit
from .graph import Graph
from .models import CostBenefitTable, EdgeProbabilities
from .network import (DiffusionNetwork, build_top_degree_network,
                      sample_diffusion_network)

__all__ = [
    "Solution",
    "SampleBoundParams",
    "HeuristicParams",
    "sample_bound",
    "solve_sba",
    "solve_heu",
    "solve_random",
    "solve_high_degree",
]

R_INTERNAL_DEFAULT = 100
R_REPORT_DEFAULT = 10_000


@dataclass(frozen=True)
class Solution:
    algo: str
    seeds: list[int]
    cost: float
    profit: SpreadEstimate
    network: DiffusionNetwork
    budget: float
    ell: int
    master_seed: int
    x: int | None = None        # SBA sample count, None elsewhere
    elapsed_ms: float = 0.0
    config: dict = field(default_factory=dict)

    def to_json(self, path: str, edges_path: str | None = None) -> None:
        if edges_path:
            self.network.to_json(edges_path)
        doc = {"algo": self.algo, "seed_set": self.seeds, "cost": self.cost,
               "profit_mean": self.profit.mean, "profit_stderr": self.profit.stderr,
               "R": self.profit.r, "x": self.x, "ell": self.ell, "budget": self.budget,
               "rng_seed": self.master_seed, "elapsed_ms": self.elapsed_ms,
               "edges_path": edges_path}
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)


@dataclass(frozen=True)
class SampleBoundParams:
    eps: float = 0.1
    delta: float = 0.05
    rho: float = 0.5            # estimated-to-maximum profit ratio; not derivable, user-supplied

    @property
    def x(self) -> int:
        return sample_bound(self.eps, self.delta, self.rho)


@dataclass(frozen=True)
class HeuristicParams:
    eps: float = 0.1            # sampling parameter of the per-iteration candidate draw
    gain: str = "benefit"       # "benefit" | "influence"
    r: int = R_INTERNAL_DEFAULT


def sample_bound(eps: float, delta: float, rho: float) -> int:
    """Samples needed for an eps-accurate profit estimate with confidence 1-delta."""
    if not (0.0 < eps < 1.0 and 0.0 < delta < 1.0):
        raise ValueError("eps and delta must lie in (0, 1)")
    if not (0.0 < rho <= 1.0):
        raise ValueError("rho must lie in (0, 1]")
    return max(1, math.ceil(math.log(2.0 / delta) / (2.0 * eps * eps * rho * rho)))


def _empty_solution(algo: str, g: Graph, net: DiffusionNetwork, budget: float,
                    ell: int, master_seed: int, r: int, x: int | None = None) -> Solution:
    warnings.warn(f"{algo}: budget {budget} cannot afford any node; returning empty seed set")
    return Solution(algo=algo, seeds=[], cost=0.0,
                    profit=SpreadEstimate(0.0, 0.0, r, "profit"),
                    network=net, budget=budget, ell=ell, master_seed=master_seed, x=x)


def _greedy_affordable(order: np.ndarray, cost: np.ndarray, budget: float) -> list[int]:
    """Walk `order`, adding every node that still fits in the remaining budget."""
    chosen: list[int] = []
    remaining = budget
    for u in order:
        c = float(cost[u])
        if c <= remaining:
            chosen.append(int(u))
            remaining -= c
    return chosen


def _finish(sol: Solution, t0: float) -> Solution:
    return dataclasses.replace(sol, elapsed_ms=(time.perf_counter() - t0) * 1e3)


def solve_sba(g: Graph, probs: EdgeProbabilities, cb: CostBenefitTable,
              budget: float, ell: int, x: int = 50,
              r_eval: int = R_INTERNAL_DEFAULT, r_report: int = R_REPORT_DEFAULT,
              master_seed: int = 0) -> Solution:
    """Sampling-based search: draw x uniform capped subgraphs, greedily seed each
    by retained out-degree, and keep the (seed set, network) pair with the best
    estimated profit. Networks are sampled online, one in memory at a time."""
    if budget <= 0:
        raise ValueError("budget must be positive")
    if x < 1:
        raise ValueError("sample count x must be >= 1")
    t0 = time.perf_counter()
    if cb.c_min > budget:
        net = sample_diffusion_network(g, ell, rng.stream(master_seed, "sba-net", 0))
        return _finish(_empty_solution("sba", g, net, budget, ell, master_seed, r_report, x), t0)

    ids = np.arange(g.n)
    best_phi = -math.inf
    best: tuple[list[int], DiffusionNetwork] | None = None
    for j in range(x):
        net = sample_diffusion_network(g, ell, rng.stream(master_seed, "sba-net", j))
        order = np.lexsort((ids, -net.out_degrees))
        seeds = _greedy_affordable(order, cb.cost, budget)
        est = estimate_profit(net, probs, seeds, cb, r_eval,
                              rng.child_seed(master_seed, "sba-eval", j))
        if est.mean > best_phi:
            best_phi = est.mean
            best = (seeds, net)

    seeds, net = best
    final = estimate_profit(net, probs, seeds, cb, r_report,
                            rng.child_seed(master_seed, "sba-final"))
    return _finish(Solution(algo="sba", seeds=sorted(seeds), cost=cb.cost_of(seeds), profit=final,
                            network=net, budget=budget, ell=ell,
                            master_seed=master_seed, x=x), t0)


def _marginal_gains(net: DiffusionNetwork, thresholds: np.ndarray, benefit: np.ndarray,
                    members: np.ndarray, candidates: list[int], r: int,
                    master_seed: int, iteration: int, use_benefit: bool) -> np.ndarray:
    """Mean marginal gain of each candidate over r cascades.

    The same live-arc coins are shared by every candidate in the iteration
    (common random numbers), and the base cascade from the current seed set
    is extended incrementally per candidate."""
    gains = np.zeros(len(candidates))
    for i in range(r):
        gen = rng.stream(master_seed, "heu-eval", iteration, i)
        live = gen.random(net.arc_count) < thresholds
        base = np.zeros(net.n, dtype=np.uint8)
        if members.size:
            reach(net.indptr, net.indices, live, members, base)
        base_mask = base.view(bool)
        for ci, v in enumerate(candidates):
            if base_mask[v]:
                continue
            act = base.copy()
            reach(net.indptr, net.indices, live, np.array([v], dtype=np.int64), act)
            new = act.view(bool) & ~base_mask
            gains[ci] += float(benefit[new].sum()) if use_benefit else float(new.sum())
    return gains / r


def solve_heu(g: Graph, probs: EdgeProbabilities, cb: CostBenefitTable,
              budget: float, ell: int, params: HeuristicParams = HeuristicParams(),
              r_report: int = R_REPORT_DEFAULT, master_seed: int = 0) -> Solution:
    """Marginal-gain heuristic on the top-degree network.

    Each iteration samples max(1, ceil((n/k)·ln(1/eps))) non-seed nodes with
    k = ceil(remaining_budget / C_min), scores the affordable ones by mean
    marginal gain per unit cost, and adds the best. If no sampled node is
    affordable, the full remaining pool is considered once before stopping."""
    if budget <= 0:
        raise ValueError("budget must be positive")
    if not (0.0 < params.eps < 1.0):
        raise ValueError("heuristic eps must lie in (0, 1)")
    if params.gain not in ("benefit", "influence"):
        raise ValueError(f"unknown gain metric {params.gain!r}")
    t0 = time.perf_counter()
    net = build_top_degree_network(g, ell)
    if cb.c_min > budget:
        return _finish(_empty_solution("heu", g, net, budget, ell, master_seed, r_report), t0)

    thresholds = net.arc_probabilities(probs)
    use_benefit = params.gain == "benefit"
    n = g.n
    c_min = cb.c_min
    log_term = math.log(1.0 / params.eps)
    in_s = np.zeros(n, dtype=bool)
    chosen: list[int] = []
    remaining = float(budget)
    it = 0
    while True:
        pool = np.flatnonzero(~in_s)
        if pool.size == 0:
            break
        affordable = pool[cb.cost[pool] <= remaining]
        if affordable.size == 0:
            break
        k = max(1, math.ceil(remaining / c_min))
        s = max(1, math.ceil(n / k * log_term))
        s = min(s, pool.size)
        gen = rng.stream(master_seed, "heu-sample", it)
        cand = np.sort(gen.choice(pool, size=s, replace=False))
        cand = [int(v) for v in cand if cb.cost[v] <= remaining]
        if not cand:
            # unlucky sample: fall back to the full affordable pool once
            cand = [int(v) for v in affordable]
        members = np.asarray(chosen, dtype=np.int64)
        gains = _marginal_gains(net, thresholds, cb.benefit, members, cand,
                                params.r, master_seed, it, use_benefit)
        ratios = gains / cb.cost[cand]
        best = int(np.argmax(ratios))  # candidates ascend by id, so ties pick the lowest
        v_star = cand[best]
        chosen.append(v_star)
        in_s[v_star] = True
        remaining -= float(cb.cost[v_star])
        it += 1

    final = estimate_profit(net, probs, chosen, cb, r_report,
                            rng.child_seed(master_seed, "heu-final"))
    return _finish(Solution(algo="heu", seeds=sorted(chosen), cost=cb.cost_of(chosen),
                            profit=final, network=net, budget=budget, ell=ell,
                            master_seed=master_seed), t0)


def solve_random(g: Graph, probs: EdgeProbabilities, cb: CostBenefitTable,
                 budget: float, ell: int, r_report: int = R_REPORT_DEFAULT,
                 master_seed: int = 0) -> Solution:
    """Baseline: random node order, random capped subgraph."""
    if budget <= 0:
        raise ValueError("budget must be positive")
    t0 = time.perf_counter()
    net = sample_diffusion_network(g, ell, rng.stream(master_seed, "random-net"))
    if cb.c_min > budget:
        return _finish(_empty_solution("random", g, net, budget, ell, master_seed, r_report), t0)
    order = rng.stream(master_seed, "random-perm").permutation(g.n)
    seeds = _greedy_affordable(order, cb.cost, budget)
    final = estimate_profit(net, probs, seeds, cb, r_report,
                            rng.child_seed(master_seed, "random-final"))
    return _finish(Solution(algo="random", seeds=sorted(seeds), cost=cb.cost_of(seeds),
                            profit=final, network=net, budget=budget, ell=ell,
                            master_seed=master_seed), t0)


def solve_high_degree(g: Graph, probs: EdgeProbabilities, cb: CostBenefitTable,
                      budget: float, ell: int, r_report: int = R_REPORT_DEFAULT,
                      master_seed: int = 0) -> Solution:
    """Baseline: seeds by descending out-degree, random capped subgraph."""
    if budget <= 0:
        raise ValueError("budget must be positive")
    t0 = time.perf_counter()
    net = sample_diffusion_network(g, ell, rng.stream(master_seed, "highdeg-net"))
    if cb.c_min > budget:
        return _finish(_empty_solution("highdeg", g, net, budget, ell, master_seed, r_report), t0)
    ids = np.arange(g.n)
    order = np.lexsort((ids, -g.out_degrees))
    seeds = _greedy_affordable(order, cb.cost, budget)
    final = estimate_profit(net, probs, seeds, cb, r_report,
                            rng.child_seed(master_seed, "highdeg-final"))
    return _finish(Solution(algo="highdeg", seeds=sorted(seeds), cost=cb.cost_of(seeds),
                            profit=final, network=net, budget=budget, ell=ell,
                            master_seed=master_seed), t0)
