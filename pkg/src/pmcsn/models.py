"""Arc probability models and per-node cost/benefit models.

Probability tables are aligned with a Graph's canonical arc numbering.
Both table kinds serialize to a small versioned JSON document so an
experiment can be replayed bit-exactly from its config.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import rng
from .graph import Graph

__all__ = [
    "EdgeProbabilities",
    "CostBenefitTable",
    "assign_trivalency",
    "assign_weighted_cascade",
    "assign_cost_benefit",
    "TRIVALENCY_VALUES",
]

TRIVALENCY_VALUES = np.array([0.1, 0.01, 0.001])

_FORMAT_VERSION = 1


@dataclass(frozen=True)
class EdgeProbabilities:
    """One influence probability per arc, in (0, 1]."""

    values: np.ndarray          # float64, one entry per graph arc
    model: str                  # "trivalency" | "wc-source" | "wc-target"
    seed: int | None = None

    def __post_init__(self):
        v = self.values
        if v.size and (v.min() <= 0.0 or v.max() > 1.0):
            raise ValueError("arc probabilities must lie in (0, 1]")

    def to_json(self, path: str) -> None:
        doc = {"version": _FORMAT_VERSION, "kind": "edge-probabilities",
               "model": self.model, "seed": self.seed,
               "values": self.values.tolist()}
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh)

    @classmethod
    def from_json(cls, path: str, graph: Graph | None = None) -> "EdgeProbabilities":
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        if doc.get("version") != _FORMAT_VERSION or doc.get("kind") != "edge-probabilities":
            raise ValueError(f"unrecognized probability table document: {path}")
        values = np.asarray(doc["values"], dtype=np.float64)
        if graph is not None and values.shape[0] != graph.arc_count:
            raise ValueError("probability table does not match graph arc count")
        return cls(values=values, model=doc["model"], seed=doc["seed"])


@dataclass(frozen=True)
class CostBenefitTable:
    """Per-node selection cost C(u) > 0 and benefit b(u) > 0."""

    cost: np.ndarray            # float64, shape (n,)
    benefit: np.ndarray         # float64, shape (n,)
    cost_model: str = ""
    benefit_model: str = ""
    seed: int | None = None

    def __post_init__(self):
        if self.cost.min() <= 0.0 or self.benefit.min() <= 0.0:
            raise ValueError("costs and benefits must be strictly positive")

    @property
    def c_min(self) -> float:
        return float(self.cost.min())

    @property
    def max_profit_bound(self) -> float:
        """Sum of all benefits minus the minimum selection cost."""
        return float(self.benefit.sum() - self.cost.min())

    def cost_of(self, seeds) -> float:
        seeds = np.asarray(list(seeds), dtype=np.int64)
        return float(self.cost[seeds].sum()) if seeds.size else 0.0

    def to_json(self, path: str) -> None:
        doc = {"version": _FORMAT_VERSION, "kind": "cost-benefit",
               "cost_model": self.cost_model, "benefit_model": self.benefit_model,
               "seed": self.seed,
               "cost": self.cost.tolist(), "benefit": self.benefit.tolist()}
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh)

    @classmethod
    def from_json(cls, path: str) -> "CostBenefitTable":
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        if doc.get("version") != _FORMAT_VERSION or doc.get("kind") != "cost-benefit":
            raise ValueError(f"unrecognized cost/benefit document: {path}")
        return cls(cost=np.asarray(doc["cost"], dtype=np.float64),
                   benefit=np.asarray(doc["benefit"], dtype=np.float64),
                   cost_model=doc["cost_model"], benefit_model=doc["benefit_model"],
                   seed=doc["seed"])


def assign_trivalency(g: Graph, seed: int) -> EdgeProbabilities:
    """Each arc gets 0.1, 0.01 or 0.001 uniformly at random."""
    if g.n == 0:
        raise ValueError("empty graph")
    gen = rng.stream(seed, "trivalency")
    picks = gen.integers(0, 3, size=g.arc_count)
    return EdgeProbabilities(values=TRIVALENCY_VALUES[picks], model="trivalency", seed=seed)


def assign_weighted_cascade(g: Graph, mode: str = "source") -> EdgeProbabilities:
    """Weighted-cascade probabilities.

    mode "source": p(u->v) = 1/d_out(u) (literal reading of the setup).
    mode "target": p(u->v) = 1/d_in(v) (the conventional form).
    """
    if g.n == 0:
        raise ValueError("empty graph")
    if mode == "source":
        deg = g.out_degrees[g.arc_sources]
    elif mode == "target":
        deg = g.in_degrees[g.indices]
    else:
        raise ValueError(f"unknown weighted-cascade mode: {mode!r}")
    values = np.clip(1.0 / deg.astype(np.float64), 0.0, 1.0)
    return EdgeProbabilities(values=values, model=f"wc-{mode}", seed=None)


def _parse_model(spec: str, allowed: dict[str, int]) -> tuple[str, list[float]]:
    parts = spec.split(":")
    name = parts[0]
    if name not in allowed:
        raise ValueError(f"unknown model {name!r}; expected one of {sorted(allowed)}")
    if len(parts) - 1 != allowed[name]:
        raise ValueError(f"model {name!r} takes {allowed[name]} parameter(s), got {len(parts) - 1}")
    try:
        params = [float(p) for p in parts[1:]]
    except ValueError as exc:
        raise ValueError(f"bad parameter in model spec {spec!r}") from exc
    if any(p <= 0 for p in params):
        raise ValueError(f"model parameters must be positive: {spec!r}")
    return name, params


def assign_cost_benefit(g: Graph,
                        cost_model: str = "degprop:1:0.1",
                        benefit_model: str = "uniform:10",
                        seed: int = 0) -> CostBenefitTable:
    """Build a cost/benefit table from compact model specs.

    Cost models: ``uniform:<c>`` and ``degprop:<base>:<gamma>``
    (C(u) = base + gamma * d_out(u)).
    Benefit models: ``uniform:<b0>`` and ``seeded-uniform:<lo>:<hi>``
    (b(u) drawn uniformly from [lo, hi] from the seed).
    """
    name, p = _parse_model(cost_model, {"uniform": 1, "degprop": 2})
    if name == "uniform":
        cost = np.full(g.n, p[0])
    else:
        cost = p[0] + p[1] * g.out_degrees.astype(np.float64)

    name, p = _parse_model(benefit_model, {"uniform": 1, "seeded-uniform": 2})
    if name == "uniform":
        benefit = np.full(g.n, p[0])
    else:
        lo, hi = p
        if hi < lo:
            raise ValueError("seeded-uniform requires lo <= hi")
        benefit = rng.stream(seed, "benefit").uniform(lo, hi, size=g.n)

    return CostBenefitTable(cost=cost, benefit=benefit,
                            cost_model=cost_model, benefit_model=benefit_model, seed=seed)
