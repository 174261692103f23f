"""Independent Cascade simulation and Monte Carlo estimation.

One cascade is realized as a live-arc world: every retained arc flips its
Bernoulli coin up front, and the influenced set is whatever the seeds reach
through live arcs. Replication i draws its coins from a stream derived from
(master_seed, label, i), so estimates do not depend on execution order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import rng
from ._kernels import reach
from .models import CostBenefitTable, EdgeProbabilities
from .network import DiffusionNetwork

__all__ = [
    "SpreadEstimate",
    "simulate_ic_once",
    "estimate_spread",
    "estimate_benefit",
    "estimate_profit",
]


@dataclass(frozen=True)
class SpreadEstimate:
    mean: float
    stderr: float
    r: int
    kind: str                   # "influence" | "benefit" | "profit"


def _seed_array(net: DiffusionNetwork, seeds) -> np.ndarray:
    arr = np.asarray(sorted(set(int(s) for s in seeds)), dtype=np.int64)
    if arr.size and (arr.min() < 0 or arr.max() >= net.n):
        raise ValueError(f"seed node id out of range 0..{net.n - 1}")
    return arr


def _cascade(net: DiffusionNetwork, thresholds: np.ndarray, seeds: np.ndarray,
             gen: np.random.Generator) -> np.ndarray:
    active = np.zeros(net.n, dtype=np.uint8)
    live = gen.random(net.arc_count) < thresholds
    reach(net.indptr, net.indices, live, seeds, active)
    return active


def simulate_ic_once(net: DiffusionNetwork, probs: EdgeProbabilities, seeds,
                     gen: np.random.Generator) -> np.ndarray:
    """One cascade; returns the sorted ids of all influenced nodes."""
    seed_arr = _seed_array(net, seeds)
    if seed_arr.size == 0:
        return seed_arr
    active = _cascade(net, net.arc_probabilities(probs), seed_arr, gen)
    return np.flatnonzero(active)


def _estimate(net: DiffusionNetwork, probs: EdgeProbabilities, seeds, r: int,
              master_seed: int, score, kind: str, label: str) -> SpreadEstimate:
    if r < 1:
        raise ValueError("replication count must be >= 1")
    seed_arr = _seed_array(net, seeds)
    if seed_arr.size == 0:
        return SpreadEstimate(0.0, 0.0, r, kind)
    thresholds = net.arc_probabilities(probs)
    vals = np.empty(r)
    for i in range(r):
        gen = rng.stream(master_seed, label, i)
        vals[i] = score(_cascade(net, thresholds, seed_arr, gen))
    stderr = float(vals.std(ddof=1) / np.sqrt(r)) if r > 1 else 0.0
    return SpreadEstimate(float(vals.mean()), stderr, r, kind)


def estimate_spread(net: DiffusionNetwork, probs: EdgeProbabilities, seeds,
                    r: int, master_seed: int) -> SpreadEstimate:
    """Monte Carlo estimate of the expected influenced-node count."""
    return _estimate(net, probs, seeds, r, master_seed,
                     lambda active: float(active.sum()), "influence", "mc-spread")


def estimate_benefit(net: DiffusionNetwork, probs: EdgeProbabilities, seeds,
                     cb: CostBenefitTable, r: int, master_seed: int) -> SpreadEstimate:
    """Monte Carlo estimate of the expected benefit of the influenced set."""
    if cb.benefit.shape[0] != net.n:
        raise ValueError("cost/benefit table does not cover all nodes")
    benefit = cb.benefit
    return _estimate(net, probs, seeds, r, master_seed,
                     lambda active: float(benefit[active.view(bool)].sum()),
                     "benefit", "mc-benefit")


def estimate_profit(net: DiffusionNetwork, probs: EdgeProbabilities, seeds,
                    cb: CostBenefitTable, r: int, master_seed: int) -> SpreadEstimate:
    """Estimated benefit minus seed-set cost; shares the benefit estimator's coins."""
    est = estimate_benefit(net, probs, seeds, cb, r, master_seed)
    return SpreadEstimate(est.mean - cb.cost_of(seeds), est.stderr, est.r, "profit")
