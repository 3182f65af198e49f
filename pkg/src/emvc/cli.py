"""Command-line experiment runner.

Examples
--------
::

    emvc run --synthetic 500 --methods emvc,feat_concat,bsv --reps 5 --out out/
    emvc sweep --synthetic 100 --lambda-grid 1e-3,1,1e3 --beta-grid 1e-3,1,1e3
"""

import argparse
import logging
import sys

from .exceptions import EMVCError
from .experiment import (build_config, format_table, read_config_file,
                         run_experiment, sweep)


def _csv_list(s):
    return [v for v in s.replace(" ", "").split(",") if v]


def _float_list(s):
    return [float(v) for v in _csv_list(s)]


def _common(p):
    p.add_argument("--config", help="INI experiment file; flags override it")
    p.add_argument("--dataset", type=_csv_list,
                   help="comma-separated CSV files, one per view")
    p.add_argument("--labels", help="single-column CSV of class labels")
    p.add_argument("--synthetic", type=int, metavar="N",
                   help="two-view Gaussian benchmark, N samples per cluster")
    p.add_argument("--methods", type=_csv_list)
    p.add_argument("--clusters", type=int)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--max-iters", type=int)
    p.add_argument("--kmeans-restarts", type=int)
    p.add_argument("--sigma-mode", choices=["median_squared", "median_raw"])
    p.add_argument("--snr", type=float, help="linear signal-to-noise ratio")
    p.add_argument("--corrupt-fraction", type=float)
    p.add_argument("--reps", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="output directory")
    p.add_argument("-v", "--verbose", action="store_true")


def make_parser():
    parser = argparse.ArgumentParser(
        prog="emvc", description="Multi-view clustering experiments.")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run methods and report metrics")
    _common(run)
    sw = sub.add_parser("sweep", help="EMVC accuracy over a lambda/beta grid")
    _common(sw)
    sw.add_argument("--lambda-grid", type=_float_list, required=True)
    sw.add_argument("--beta-grid", type=_float_list, required=True)
    return parser


def config_from_args(args):
    file_values = read_config_file(args.config) if args.config else None
    return build_config(
        file_values,
        dataset=args.dataset, labels=args.labels, synthetic=args.synthetic,
        methods=args.methods, clusters=args.clusters,
        sigma_mode=args.sigma_mode, snr=args.snr,
        corrupt_fraction=args.corrupt_fraction, reps=args.reps,
        seed=args.seed, out=args.out,
        emvc={"lam": args.lam, "beta": args.beta, "max_iters": args.max_iters},
        kmeans={"restarts": args.kmeans_restarts})


def main(argv=None):
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
        if args.command == "run":
            report = run_experiment(cfg)
            sys.stdout.write(format_table(report["summary"]))
        else:
            report = sweep(cfg, args.lambda_grid, args.beta_grid)
            for row in report["rows"]:
                print(f"lambda={row['lambda']:g} beta={row['beta']:g} "
                      f"accuracy={row['accuracy_mean']:.3f}"
                      f"({row['accuracy_std']:.3f})")
    except EMVCError as exc:
        print(f"emvc: error: {exc}", file=sys.stderr)
        return 2
    return 0 if report["status"] == "ok" else 1


if __name__ == "__main__":
    sys.exit(main())
