"""Command line front end for rendering sweep charts."""

import argparse
import sys

from .render import render_all


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pmcsn-plot",
        description="Render budget-vs-profit and budget-vs-runtime charts "
                    "from a pmcsn-bench sweep CSV")
    parser.add_argument("--csv", required=True, help="sweep CSV file to read")
    parser.add_argument("--out-dir", required=True, help="directory for PNG and JSON output")
    parser.add_argument("--dataset", help="only plot rows for this dataset")
    parser.add_argument("--prob-model", help="only plot rows for this probability model")
    parser.add_argument("--ell", type=int, help="only plot rows for this out-degree cap")
    parser.add_argument("--metric", choices=["profit", "time", "both"], default="both",
                        help="which metric to plot (default: both)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    metrics = ("profit", "time") if args.metric == "both" else (args.metric,)
    try:
        manifest = render_all(args.csv, args.out_dir, dataset=args.dataset,
                              prob_model=args.prob_model, ell=args.ell, metrics=metrics)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for entry in manifest:
        print(entry["figure"])
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
