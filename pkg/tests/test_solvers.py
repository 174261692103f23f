import math

import numpy as np
import pytest

from pmcsn import rng
from pmcsn.exact import exact_benefit
from pmcsn.models import CostBenefitTable, assign_cost_benefit
from pmcsn.network import validate_diffusion_network
from pmcsn.solvers import (HeuristicParams, SampleBoundParams, sample_bound,
                           solve_heu, solve_high_degree, solve_random, solve_sba)
from pmcsn.synth import synthetic_social
from conftest import make_graph, manual_probs, random_tiny_instance, uniform_cb

ALL_SOLVERS = {
    "sba": lambda g, p, cb, B, ell, seed: solve_sba(g, p, cb, B, ell, x=4, r_eval=20,
                                                    r_report=20, master_seed=seed),
    "heu": lambda g, p, cb, B, ell, seed: solve_heu(g, p, cb, B, ell,
                                                    params=HeuristicParams(r=10),
                                                    r_report=20, master_seed=seed),
    "random": lambda g, p, cb, B, ell, seed: solve_random(g, p, cb, B, ell, r_report=20,
                                                          master_seed=seed),
    "highdeg": lambda g, p, cb, B, ell, seed: solve_high_degree(g, p, cb, B, ell,
                                                                r_report=20, master_seed=seed),
}


# --- sample bound -----------------------------------------------------------

def test_sample_bound_known_values():
    assert sample_bound(0.1, 0.05, 0.5) == 738
    assert sample_bound(0.1, 0.1, 1.0) == 150


def test_sample_bound_against_high_precision():
    import mpmath
    for eps, delta, rho in [(0.1, 0.05, 0.5), (0.1, 0.1, 1.0), (0.3, 0.02, 0.7),
                            (0.05, 0.01, 0.25)]:
        with mpmath.workdps(60):
            expected = int(mpmath.ceil(mpmath.log(2 / mpmath.mpf(delta))
                                       / (2 * mpmath.mpf(eps) ** 2 * mpmath.mpf(rho) ** 2)))
        assert sample_bound(eps, delta, rho) == expected


def test_sample_bound_monotone():
    base = sample_bound(0.1, 0.05, 0.5)
    assert sample_bound(0.2, 0.05, 0.5) <= base
    assert sample_bound(0.1, 0.1, 0.5) <= base
    assert sample_bound(0.1, 0.05, 0.9) <= base


def test_sample_bound_rejects_bad_params():
    for eps, delta, rho in [(0.0, 0.1, 0.5), (1.0, 0.1, 0.5), (0.1, 0.0, 0.5),
                            (0.1, 0.1, 0.0), (0.1, 0.1, 1.5)]:
        with pytest.raises(ValueError):
            sample_bound(eps, delta, rho)


def test_sample_bound_params_dataclass():
    assert SampleBoundParams(eps=0.1, delta=0.05, rho=0.5).x == 738


# --- SBA --------------------------------------------------------------------

def test_sba_single_network_family(chain3):
    g, probs = chain3
    cb = uniform_cb(3)
    sol = solve_sba(g, probs, cb, budget=3.0, ell=2, x=5, r_eval=50, r_report=50,
                    master_seed=1)
    # all out-degrees <= ell, so the sampled networks all equal the graph
    assert np.array_equal(sol.network.kept, np.arange(g.arc_count))
    sol2 = solve_sba(g, probs, cb, budget=3.0, ell=2, x=5, r_eval=50, r_report=50,
                     master_seed=1)
    assert sol.seeds == sol2.seeds and sol.profit == sol2.profit


def test_sba_budget_below_cmin(chain3):
    g, probs = chain3
    cb = uniform_cb(3, cost=5.0)
    with pytest.warns(UserWarning):
        sol = solve_sba(g, probs, cb, budget=1.0, ell=2, x=3)
    assert sol.seeds == [] and sol.profit.mean == 0.0


def test_sba_rejects_bad_args(chain3):
    g, probs = chain3
    cb = uniform_cb(3)
    with pytest.raises(ValueError):
        solve_sba(g, probs, cb, budget=1.0, ell=2, x=0)
    with pytest.raises(ValueError):
        solve_sba(g, probs, cb, budget=0.0, ell=2, x=1)


# --- HEU --------------------------------------------------------------------

def test_heu_budget_below_cmin(chain3):
    g, probs = chain3
    cb = uniform_cb(3, cost=5.0)
    with pytest.warns(UserWarning):
        sol = solve_heu(g, probs, cb, budget=1.0, ell=2)
    assert sol.seeds == [] and sol.profit.mean == 0.0


def test_heu_single_affordable_node(chain3):
    g, probs = chain3
    cb = CostBenefitTable(cost=np.array([9.0, 1.0, 9.0]), benefit=np.full(3, 1.0))
    sol = solve_heu(g, probs, cb, budget=1.5, ell=2, r_report=20)
    assert sol.seeds == [1]


def test_heu_star_picks_center(star5):
    g, probs = star5
    cb = uniform_cb(5)
    sol = solve_heu(g, probs, cb, budget=1.0, ell=4, r_report=100, master_seed=3)
    assert sol.seeds == [0]
    # deterministic cascade: profit is exactly 5 - 1
    assert sol.profit.mean == pytest.approx(4.0)
    assert exact_benefit(sol.network, probs, cb, sol.seeds).value - sol.cost == \
        pytest.approx(4.0, abs=1e-12)


def test_heu_gain_metric_influence(star5):
    g, probs = star5
    cb = uniform_cb(5)
    sol = solve_heu(g, probs, cb, budget=1.0, ell=4,
                    params=HeuristicParams(gain="influence", r=10), r_report=50)
    assert sol.seeds == [0]


def test_heu_bad_params(star5):
    g, probs = star5
    cb = uniform_cb(5)
    with pytest.raises(ValueError):
        solve_heu(g, probs, cb, 1.0, 4, params=HeuristicParams(eps=1.5))
    with pytest.raises(ValueError):
        solve_heu(g, probs, cb, 1.0, 4, params=HeuristicParams(gain="spread"))


# --- baselines --------------------------------------------------------------

def test_random_buys_everything_when_affordable():
    g, probs, _ = random_tiny_instance(1)
    cb = uniform_cb(g.n, cost=1.0)
    sol = solve_random(g, probs, cb, budget=float(g.n), ell=2, r_report=20)
    assert sol.seeds == list(range(g.n))


def test_random_deterministic():
    g, probs, _ = random_tiny_instance(2)
    cb = uniform_cb(g.n, cost=2.0)
    a = solve_random(g, probs, cb, budget=4.0, ell=2, r_report=20, master_seed=9)
    b = solve_random(g, probs, cb, budget=4.0, ell=2, r_report=20, master_seed=9)
    assert a.seeds == b.seeds and a.profit == b.profit


def test_high_degree_head():
    g = make_graph(5, [(0, 1), (0, 2), (0, 3), (1, 2), (4, 0)])
    cb = uniform_cb(5, cost=1.0)
    sol = solve_high_degree(g, manual_probs(g, 0.5), cb, budget=1.0, ell=2, r_report=20)
    assert sol.seeds == [0]  # max out-degree node


def test_high_degree_tie_breaks_low_id():
    g = make_graph(6, [(0, 1), (0, 2), (3, 4), (3, 5), (1, 2)])
    cb = uniform_cb(6, cost=1.0)
    sol = solve_high_degree(g, manual_probs(g, 0.5), cb, budget=1.0, ell=2, r_report=20)
    assert sol.seeds == [0]  # nodes 0 and 3 both have out-degree 2


def test_baselines_budget_below_cmin(chain3):
    g, probs = chain3
    cb = uniform_cb(3, cost=5.0)
    for solver in (solve_random, solve_high_degree):
        with pytest.warns(UserWarning):
            sol = solver(g, probs, cb, budget=1.0, ell=2)
        assert sol.seeds == []


# --- cross-cutting invariants ----------------------------------------------

def test_solutions_satisfy_constraints():
    gen = rng.stream(0, "solver-fuzz")
    for trial in range(25):
        g, probs, _ = random_tiny_instance(100 + trial, n_max=6, arc_budget=12)
        cb = assign_cost_benefit(g, cost_model="degprop:1:0.5",
                                 benefit_model="seeded-uniform:1:5", seed=trial)
        budget = float(gen.uniform(0.5, 10.0))
        ell = int(gen.integers(1, 4))
        for name, solver in ALL_SOLVERS.items():
            import warnings
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                sol = solver(g, probs, cb, budget, ell, trial)
            assert sol.cost <= budget + 1e-9, name
            assert len(set(sol.seeds)) == len(sol.seeds), name
            assert validate_diffusion_network(g, sol.network, ell) is None, name
            assert all(0 <= s < g.n for s in sol.seeds), name


def test_solvers_deterministic():
    g, probs, _ = random_tiny_instance(7, n_max=6, arc_budget=12)
    cb = uniform_cb(g.n, cost=1.5, benefit=3.0)
    for name, solver in ALL_SOLVERS.items():
        a = solver(g, probs, cb, 5.0, 2, 42)
        b = solver(g, probs, cb, 5.0, 2, 42)
        assert a.seeds == b.seeds and a.profit == b.profit, name


def test_solution_json(tmp_path, star5):
    g, probs = star5
    cb = uniform_cb(5)
    sol = solve_heu(g, probs, cb, budget=2.0, ell=4, r_report=20)
    path = str(tmp_path / "sol.json")
    edges = str(tmp_path / "edges.json")
    sol.to_json(path, edges_path=edges)
    import json
    doc = json.load(open(path))
    assert doc["algo"] == "heu"
    assert doc["seed_set"] == sol.seeds
    assert doc["edges_path"] == edges
    assert json.load(open(edges))["arcs"]
