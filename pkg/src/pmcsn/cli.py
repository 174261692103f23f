"""Benchmark CLI: single runs, budget x ell sweeps, the exact oracle, the
sample-size calculator, and solution validation.

Exit codes: 0 success, 2 configuration error, 3 data error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import zlib

import numpy as np

from . import rng
from .exact import exact_optimum
from .graph import Graph, GraphFormatError, load_edge_list
from .models import assign_cost_benefit, assign_trivalency, assign_weighted_cascade
from .network import validate_diffusion_network
from .network import _from_kept
from .solvers import (HeuristicParams, sample_bound, solve_heu, solve_high_degree,
                      solve_random, solve_sba)

CSV_COLUMNS = ["dataset", "prob_model", "algo", "budget", "ell", "repeat", "seed",
               "n_seeds", "cost", "profit_mean", "profit_stderr", "R", "x",
               "elapsed_ms", "checksum"]

EXIT_CONFIG = 2
EXIT_DATA = 3


class ConfigError(Exception):
    pass


class DataError(Exception):
    pass


def _num(v: float) -> str:
    return f"{v:.6f}"


def _row_checksum(fields: dict) -> str:
    payload = "|".join(str(fields[c]) for c in CSV_COLUMNS if c not in ("elapsed_ms", "checksum"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


def _row_key(fields: dict) -> tuple:
    return tuple(str(fields[c]) for c in ("dataset", "prob_model", "algo", "budget", "ell", "repeat"))


def _load_graph(args) -> Graph:
    try:
        return load_edge_list(args.dataset, directed=not args.undirected)
    except (GraphFormatError, OSError) as exc:
        raise DataError(str(exc)) from exc


def _build_tables(args, g: Graph):
    try:
        if args.prob_model == "trivalency":
            probs = assign_trivalency(g, rng.child_seed(args.seed, "probs"))
        elif args.prob_model == "wc":
            probs = assign_weighted_cascade(g, mode=args.wc_mode)
        else:
            raise ConfigError(f"unknown prob model {args.prob_model!r}")
        cb = assign_cost_benefit(g, cost_model=args.cost_model,
                                 benefit_model=args.benefit_model,
                                 seed=rng.child_seed(args.seed, "costbenefit"))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return probs, cb


def _solve(args, g, probs, cb, budget: float, ell: int, algo: str, solver_seed: int):
    if algo == "sba":
        return solve_sba(g, probs, cb, budget, ell, x=args.samples,
                         r_report=args.mc, master_seed=solver_seed)
    if algo == "heu":
        params = HeuristicParams(eps=args.heu_eps, gain=args.gain)
        return solve_heu(g, probs, cb, budget, ell, params=params,
                         r_report=args.mc, master_seed=solver_seed)
    if algo == "random":
        return solve_random(g, probs, cb, budget, ell, r_report=args.mc,
                            master_seed=solver_seed)
    if algo == "highdeg":
        return solve_high_degree(g, probs, cb, budget, ell, r_report=args.mc,
                                 master_seed=solver_seed)
    raise ConfigError(f"unknown algorithm {algo!r}")


def _make_row(args, sol, probs, budget, ell, repeat, solver_seed) -> dict:
    fields = {
        "dataset": os.path.basename(args.dataset),
        "prob_model": probs.model,
        "algo": sol.algo,
        "budget": f"{budget:g}",
        "ell": ell,
        "repeat": repeat,
        "seed": solver_seed,
        "n_seeds": len(sol.seeds),
        "cost": _num(sol.cost),
        "profit_mean": _num(sol.profit.mean),
        "profit_stderr": _num(sol.profit.stderr),
        "R": sol.profit.r,
        "x": sol.x if sol.x is not None else 0,
        "elapsed_ms": f"{sol.elapsed_ms:.3f}",
    }
    fields["checksum"] = _row_checksum(fields)
    return fields


def _append_rows(path: str, rows: list[dict], jsonl: bool) -> None:
    new_file = not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, "a", encoding="utf-8") as fh:
        if new_file:
            fh.write(",".join(CSV_COLUMNS) + "\n")
        for row in rows:
            fh.write(",".join(str(row[c]) for c in CSV_COLUMNS) + "\n")
            fh.flush()
    if jsonl:
        with open(os.path.splitext(path)[0] + ".jsonl", "a", encoding="utf-8") as fh:
            for row in rows:
                fh.write(json.dumps(row) + "\n")


def _read_existing(path: str) -> set:
    """Keys of checksum-valid rows already in the file; repairs a torn last line."""
    if not os.path.exists(path) or os.path.getsize(path) == 0:
        return set()
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if lines[0] != ",".join(CSV_COLUMNS):
        raise DataError(f"{path}: unexpected header")
    keys = set()
    for i, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) == len(CSV_COLUMNS):
            fields = dict(zip(CSV_COLUMNS, parts))
            if _row_checksum(fields) == fields["checksum"]:
                keys.add(_row_key(fields))
                continue
        if i == len(lines):
            # torn final row from an interrupted run: drop it and resume
            with open(path, "w", encoding="utf-8") as fh:
                fh.write("\n".join(lines[:-1]) + "\n")
            return keys
        raise DataError(f"{path}: checksum mismatch on line {i}")
    return keys


def _solver_seed(args, budget, ell, algo: str, repeat: int) -> int:
    key = f"{os.path.basename(args.dataset)}|{args.prob_model}|{algo}|{budget:g}|{ell}"
    return rng.child_seed(args.seed, "cell", zlib.crc32(key.encode()), repeat)


def cmd_run(args) -> int:
    if args.budget is None or args.ell is None:
        raise ConfigError("run requires --budget and --ell")
    budget = _single_float(args.budget, "--budget")
    ell = _single_int(args.ell, "--ell")
    _check_positive(budget, ell, args)
    g = _load_graph(args)
    probs, cb = _build_tables(args, g)
    solver_seed = _solver_seed(args, budget, ell, args.algo, 0)
    try:
        sol = _solve(args, g, probs, cb, budget, ell, args.algo, solver_seed)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    row = _make_row(args, sol, probs, budget, ell, 0, solver_seed)
    if args.out:
        _append_rows(args.out, [row], args.jsonl)
    if args.solution_out:
        sol.to_json(args.solution_out, edges_path=args.solution_out + ".edges.json")
    print(",".join(CSV_COLUMNS))
    print(",".join(str(row[c]) for c in CSV_COLUMNS))
    return 0


def cmd_sweep(args) -> int:
    if not args.out:
        raise ConfigError("sweep requires --out")
    budgets = _float_list(args.budget, "--budget")
    ells = _int_list(args.ell, "--ell")
    algos = args.algo.split(",") if args.algo != "all" else ["sba", "heu", "random", "highdeg"]
    for a in algos:
        if a not in ("sba", "heu", "random", "highdeg"):
            raise ConfigError(f"unknown algorithm {a!r}")
    if not budgets or not ells or args.repeats < 1:
        raise ConfigError("sweep grid is empty")
    for b in budgets:
        _check_positive(b, min(ells), args)
    g = _load_graph(args)
    probs, cb = _build_tables(args, g)
    done = _read_existing(args.out)
    for budget in budgets:
        for ell in ells:
            for algo in algos:
                for repeat in range(args.repeats):
                    solver_seed = _solver_seed(args, budget, ell, algo, repeat)
                    probe = {"dataset": os.path.basename(args.dataset),
                             "prob_model": probs.model, "algo": algo,
                             "budget": f"{budget:g}", "ell": ell, "repeat": repeat}
                    if _row_key(probe) in done:
                        continue
                    sol = _solve(args, g, probs, cb, budget, ell, algo, solver_seed)
                    row = _make_row(args, sol, probs, budget, ell, repeat, solver_seed)
                    _append_rows(args.out, [row], args.jsonl)
    return 0


def cmd_oracle(args) -> int:
    budget = _single_float(args.budget, "--budget")
    ell = _single_int(args.ell, "--ell")
    _check_positive(budget, ell, args)
    g = _load_graph(args)
    probs, cb = _build_tables(args, g)
    try:
        seeds, net, phi = exact_optimum(g, ell, probs, cb, budget, alpha_cap=args.max_alpha)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    print(json.dumps({"seed_set": list(seeds), "profit": phi, "n": g.n,
                      "ell": ell, "budget": budget, "arcs": net.arc_count}))
    return 0


def cmd_sample_bound(args) -> int:
    try:
        x = sample_bound(args.eps, args.delta, args.rho)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    print(x)
    return 0


def cmd_validate(args) -> int:
    ell = _single_int(args.ell, "--ell")
    if ell < 1:
        raise ConfigError("--ell must be >= 1")
    g = _load_graph(args)
    try:
        with open(args.solution, "r", encoding="utf-8") as fh:
            sol = json.load(fh)
        edges_path = sol["edges_path"]
        with open(edges_path, "r", encoding="utf-8") as fh:
            edges_doc = json.load(fh)
    except (OSError, KeyError, json.JSONDecodeError) as exc:
        raise DataError(f"cannot read solution: {exc}") from exc

    kept = []
    for u, v in edges_doc["arcs"]:
        if not (0 <= u < g.n):
            print(f"violation: arc source {u} out of range")
            return EXIT_DATA
        slice_ = g.indices[g.indptr[u]:g.indptr[u + 1]]
        pos = np.searchsorted(slice_, v)
        if pos >= slice_.shape[0] or slice_[pos] != v:
            print(f"violation: arc ({u},{v}) not in the graph")
            return EXIT_DATA
        kept.append(int(g.indptr[u] + pos))
    net = _from_kept(g, ell, np.asarray(kept, dtype=np.int64))
    msg = validate_diffusion_network(g, net, ell)
    if msg is not None:
        print(f"violation: {msg}")
        return EXIT_DATA
    seeds = sol.get("seed_set", [])
    if any(not (0 <= s < g.n) for s in seeds):
        print("violation: seed node out of range")
        return EXIT_DATA
    cb = assign_cost_benefit(g, cost_model=args.cost_model,
                             benefit_model=args.benefit_model,
                             seed=rng.child_seed(args.seed, "costbenefit"))
    if sol.get("budget") is not None and cb.cost_of(seeds) > float(sol["budget"]) + 1e-9:
        print(f"violation: seed cost {cb.cost_of(seeds):.6f} exceeds budget {sol['budget']}")
        return EXIT_DATA
    print("ok")
    return 0


def _check_positive(budget: float, ell: int, args) -> None:
    if budget <= 0:
        raise ConfigError("--budget must be positive")
    if ell < 1:
        raise ConfigError("--ell must be >= 1")
    if args.mc < 1:
        raise ConfigError("--mc must be >= 1")
    if getattr(args, "samples", 1) < 1:
        raise ConfigError("--samples must be >= 1")


def _single_float(text: str, flag: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"{flag} expects a number, got {text!r}")


def _single_int(text: str, flag: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"{flag} expects an integer, got {text!r}")


def _float_list(text: str, flag: str) -> list[float]:
    return [_single_float(t, flag) for t in text.split(",") if t]


def _int_list(text: str, flag: str) -> list[int]:
    return [_single_int(t, flag) for t in text.split(",") if t]


def _add_common(p: argparse.ArgumentParser, need_algo: bool = True) -> None:
    p.add_argument("--dataset", required=True, help="edge-list file path")
    p.add_argument("--undirected", action="store_true",
                   help="treat the file as undirected (expand each edge to two arcs)")
    p.add_argument("--prob-model", choices=["trivalency", "wc"], default="trivalency")
    p.add_argument("--wc-mode", choices=["source", "target"], default="source")
    p.add_argument("--cost-model", default="degprop:1:0.1")
    p.add_argument("--benefit-model", default="uniform:10")
    p.add_argument("--budget", help="budget B (comma list for sweep)")
    p.add_argument("--ell", help="out-degree cap (comma list for sweep)")
    p.add_argument("--seed", type=int, default=0, help="master RNG seed")
    p.add_argument("--mc", type=int, default=10000, help="Monte Carlo replications for reported profit")
    if need_algo:
        p.add_argument("--algo", default="all" if p.prog.endswith("sweep") else None,
                       help="sba|heu|random|highdeg (comma list or 'all' for sweep)")
        p.add_argument("--samples", type=int, default=50, help="SBA network sample count x")
        p.add_argument("--heu-eps", type=float, default=0.1)
        p.add_argument("--gain", choices=["benefit", "influence"], default="benefit")
        p.add_argument("--out", help="CSV output path")
        p.add_argument("--jsonl", action="store_true", help="also mirror rows to a .jsonl file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pmcsn-bench",
                                     description="Closed-network profit maximization benchmark")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one solver configuration")
    _add_common(p_run)
    p_run.add_argument("--solution-out", help="also write the Solution JSON (plus edges file)")
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a budget x ell x algorithm grid")
    _add_common(p_sweep)
    p_sweep.add_argument("--repeats", type=int, default=5)
    p_sweep.set_defaults(func=cmd_sweep)

    p_oracle = sub.add_parser("oracle", help="exact optimum on a tiny instance")
    _add_common(p_oracle, need_algo=False)
    p_oracle.add_argument("--max-alpha", type=int, default=10000)
    p_oracle.set_defaults(func=cmd_oracle)

    p_sb = sub.add_parser("sample-bound", help="sample-size calculator")
    p_sb.add_argument("--eps", type=float, required=True)
    p_sb.add_argument("--delta", type=float, required=True)
    p_sb.add_argument("--rho", type=float, default=0.5)
    p_sb.set_defaults(func=cmd_sample_bound)

    p_val = sub.add_parser("validate", help="validate a solution JSON against a graph")
    p_val.add_argument("--dataset", required=True)
    p_val.add_argument("--undirected", action="store_true")
    p_val.add_argument("--ell", required=True)
    p_val.add_argument("--solution", required=True)
    p_val.add_argument("--cost-model", default="degprop:1:0.1")
    p_val.add_argument("--benefit-model", default="uniform:10")
    p_val.add_argument("--seed", type=int, default=0)
    p_val.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return code


if __name__ == "__main__":
    sys.exit(main())
