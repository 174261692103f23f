"""Line charts from benchmark sweep CSV files.

Each figure shows one (dataset, probability model, out-degree cap) slice:
budget on the x-axis, one series per algorithm, values averaged over repeat
rows with standard-error bars. A sidecar JSON next to each image records the
exact plotted series so chart content can be diffed without decoding pixels.
"""

from __future__ import annotations

import csv
import json
import os
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

REQUIRED_COLUMNS = {"dataset", "prob_model", "algo", "budget", "ell", "repeat",
                    "profit_mean", "elapsed_ms"}

METRIC_LABELS = {"profit": "Profit", "time": "Execution Time (seconds)"}


@dataclass(frozen=True)
class PlotSpec:
    csv_path: str
    out_dir: str
    dataset: str | None = None
    prob_model: str | None = None
    ell: int | None = None
    metric: str = "profit"      # "profit" | "time"

    def __post_init__(self):
        if self.metric not in METRIC_LABELS:
            raise ValueError(f"metric must be one of {sorted(METRIC_LABELS)}")


def load_rows(csv_path: str) -> list[dict]:
    with open(csv_path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        missing = REQUIRED_COLUMNS - set(reader.fieldnames or [])
        if missing:
            raise ValueError(f"{csv_path}: missing columns {sorted(missing)}")
        return list(reader)


def _metric_value(row: dict, metric: str) -> float:
    if metric == "profit":
        return float(row["profit_mean"])
    return float(row["elapsed_ms"]) / 1000.0


def _matches(row: dict, spec: PlotSpec) -> bool:
    if spec.dataset is not None and row["dataset"] != spec.dataset:
        return False
    if spec.prob_model is not None and row["prob_model"] != spec.prob_model:
        return False
    if spec.ell is not None and int(row["ell"]) != spec.ell:
        return False
    return True


def build_series(rows: list[dict], metric: str) -> dict[str, dict]:
    """algo -> {budgets, mean, stderr}, means taken over repeat rows per budget."""
    buckets: dict[tuple[str, float], list[float]] = defaultdict(list)
    for row in rows:
        buckets[(row["algo"], float(row["budget"]))].append(_metric_value(row, metric))
    series: dict[str, dict] = {}
    for algo in sorted({a for a, _ in buckets}):
        budgets = sorted(b for a, b in buckets if a == algo)
        vals = [np.asarray(buckets[(algo, b)]) for b in budgets]
        series[algo] = {
            "budgets": budgets,
            "mean": [float(v.mean()) for v in vals],
            "stderr": [float(v.std(ddof=1) / np.sqrt(v.size)) if v.size > 1 else 0.0
                       for v in vals],
        }
    return series


def render(spec: PlotSpec) -> list[dict]:
    """Render every (dataset, prob_model, ell) group matching the spec.

    Returns one manifest entry per figure: the image path, the sidecar path,
    and the plotted series.
    """
    rows = [r for r in load_rows(spec.csv_path) if _matches(r, spec)]
    if not rows:
        raise ValueError("no rows match the given filters")
    os.makedirs(spec.out_dir, exist_ok=True)
    groups: dict[tuple[str, str, int], list[dict]] = defaultdict(list)
    for row in rows:
        groups[(row["dataset"], row["prob_model"], int(row["ell"]))].append(row)

    manifest = []
    for (dataset, prob_model, ell), group_rows in sorted(groups.items()):
        series = build_series(group_rows, spec.metric)
        stem = f"{os.path.splitext(dataset)[0]}_{prob_model}_ell{ell}_{spec.metric}"
        fig_path = os.path.join(spec.out_dir, stem + ".png")
        sidecar_path = os.path.join(spec.out_dir, stem + ".json")

        fig, ax = plt.subplots(figsize=(6, 4))
        for algo, s in series.items():
            ax.errorbar(s["budgets"], s["mean"], yerr=s["stderr"],
                        marker="o", capsize=3, label=algo)
        ax.set_xlabel("Budget")
        ax.set_ylabel(METRIC_LABELS[spec.metric])
        ax.set_title(f"{dataset} / {prob_model} / cap {ell}")
        ax.legend()
        fig.tight_layout()
        fig.savefig(fig_path, dpi=120)
        plt.close(fig)

        entry = {"figure": fig_path, "sidecar": sidecar_path, "dataset": dataset,
                 "prob_model": prob_model, "ell": ell, "metric": spec.metric,
                 "xlabel": "Budget", "ylabel": METRIC_LABELS[spec.metric],
                 "series": series}
        with open(sidecar_path, "w", encoding="utf-8") as fh:
            json.dump(entry, fh, indent=2)
        manifest.append(entry)
    return manifest


def render_all(csv_path: str, out_dir: str, dataset: str | None = None,
               prob_model: str | None = None, ell: int | None = None,
               metrics: tuple[str, ...] = ("profit", "time")) -> list[dict]:
    manifest = []
    for metric in metrics:
        manifest.extend(render(PlotSpec(csv_path=csv_path, out_dir=out_dir,
                                        dataset=dataset, prob_model=prob_model,
                                        ell=ell, metric=metric)))
    return manifest
