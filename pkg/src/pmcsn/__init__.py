"""Profit maximization on closed social networks.

Build out-degree-capped diffusion networks, simulate Independent Cascade
spread, and pick budgeted seed sets via sampling-based search, a
marginal-gain heuristic, or the Random / High-Degree baselines. A
brute-force oracle provides exact values on tiny instances.
"""

from ._kernels import BACKEND
from .diffusion import (SpreadEstimate, estimate_benefit, estimate_profit,
                        estimate_spread, simulate_ic_once)
from .exact import ExactResult, exact_benefit, exact_expected_benefit, exact_optimum
from .graph import Graph, GraphFormatError, degree_stats, load_edge_list, write_edge_list
from .models import (CostBenefitTable, EdgeProbabilities, assign_cost_benefit,
                     assign_trivalency, assign_weighted_cascade)
from .network import (DiffusionNetwork, build_top_degree_network,
                      count_diffusion_networks, enumerate_diffusion_networks,
                      sample_diffusion_network, validate_diffusion_network)
from .solvers import (HeuristicParams, SampleBoundParams, Solution, sample_bound,
                      solve_heu, solve_high_degree, solve_random, solve_sba)
from .synth import synthetic_social

__version__ = "0.1.0"
