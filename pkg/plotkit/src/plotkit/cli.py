"""Batch renderer: plotkit <out_dir> [--times t1,t2,...] [--format png|svg]."""

from __future__ import annotations

import argparse
import os
import sys

from .figures import plot_error, plot_profiles, plot_weights_and_marginal
from .reader import load_columns, series_times


def _parse_times(text):
    try:
        return [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad time list {text!r}: {exc}")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="plotkit",
        description="Render the standard figures from a trafficadp run",
    )
    ap.add_argument("out_dir", help="directory containing the run CSVs")
    ap.add_argument("--times", type=_parse_times, default=None,
                    help="comma-separated times; defaults to first and last")
    ap.add_argument("--format", choices=["png", "svg"], default="png")
    args = ap.parse_args(argv)

    d = args.out_dir
    spatial = os.path.join(d, "spatial.csv")
    weights = os.path.join(d, "weights.csv")
    marginal = os.path.join(d, "speed_marginal.csv")
    error = os.path.join(d, "error.csv")
    try:
        times = args.times
        if times is None:
            avail = series_times(load_columns(spatial, ["t"])["t"])
            times = [float(avail[0]), float(avail[-1])]
        made = [
            plot_profiles(spatial, times,
                          os.path.join(d, f"profiles.{args.format}")),
            plot_weights_and_marginal(
                weights, marginal, times,
                os.path.join(d, f"weights_marginal.{args.format}")),
            plot_error(error, os.path.join(d, f"error.{args.format}")),
        ]
    except (OSError, ValueError) as exc:
        print(f"plotkit: {exc}", file=sys.stderr)
        return 1
    for path in made:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
