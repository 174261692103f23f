import csv
import hashlib
import zlib

import pytest

COLUMNS = ["dataset", "prob_model", "algo", "budget", "ell", "repeat", "seed",
           "n_seeds", "cost", "profit_mean", "profit_stderr", "R", "x",
           "elapsed_ms", "checksum"]


def row_checksum(row: dict) -> str:
    payload = "|".join(str(row[c]) for c in COLUMNS if c not in ("elapsed_ms", "checksum"))
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def write_sweep_csv(path, datasets=("toy.txt",), prob_models=("trivalency",),
                    algos=("sba", "heu", "random", "highdeg"),
                    budgets=(500, 1000, 1500, 2000, 2500), ells=(4,), repeats=3):
    """Synthesize a structurally valid sweep CSV with deterministic values."""
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=COLUMNS)
        writer.writeheader()
        for dataset in datasets:
            for prob_model in prob_models:
                for algo in algos:
                    for budget in budgets:
                        for ell in ells:
                            for rep in range(repeats):
                                base = (zlib.crc32(f"{algo}:{ell}".encode()) % 1000
                                        + budget / 10)
                                row = {
                                    "dataset": dataset, "prob_model": prob_model,
                                    "algo": algo, "budget": budget, "ell": ell,
                                    "repeat": rep, "seed": 17, "n_seeds": 5,
                                    "cost": float(budget) * 0.9,
                                    "profit_mean": round(base + rep * 3.5, 6),
                                    "profit_stderr": 1.25, "R": 100, "x": 50,
                                    "elapsed_ms": round(100.0 + rep * 7.0, 3),
                                }
                                row["checksum"] = row_checksum(row)
                                writer.writerow(row)
    return path


@pytest.fixture
def sweep_csv(tmp_path):
    return write_sweep_csv(tmp_path / "sweep.csv")
