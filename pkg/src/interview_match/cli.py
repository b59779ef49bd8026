"""Command-line entry points for the simulation toolkit.

Subcommands
-----------
simulate           run an ExperimentSpec from a JSON file
sweep              run a (lambda_d, lambda_h) grid of DA replications
replicate-table1   rerun the benchmark replication study at N=50 / N=1700
replicate-figure1  rerun the benchmark sweep behind the two summary panels
example-paper      trace the bundled 3x4 worked example
verify             oracle property battery on random small markets

Relative output paths resolve under $INTERVIEW_MATCH_OUTPUT_DIR when set.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .experiments import (
    ExperimentSpec,
    run_experiment,
    run_paper_example,
    run_sweep,
    run_verification,
)

TABLE1_SIZES = (50, 1700)
TABLE1_LAMBDAS = (0.25, 0.5, 0.75)
TABLE1_REPLICATIONS = {50: 340, 1700: 10}

_SUMMARY_STATS = (
    ("unmatched_doctors", "unmatched"),
    ("first_rank_matched", "first-rank (matched)"),
    ("top3_rank_matched", "top-3 (matched)"),
    ("same_partner_on_swap", "same partner on swap"),
    ("identical_to_da", "identical to DA"),
    ("blocking_matched", "blocking, matched"),
    ("blocking_unmatched", "blocking, unmatched"),
)


def _print_summary(summary: dict[str, dict[str, float]]) -> None:
    for mechanism, stats in summary.items():
        print(f"  {mechanism}:")
        for key, label in _SUMMARY_STATS:
            value = stats[key]
            print(f"    {label:<22} {value:8.2%}" if value == value else
                  f"    {label:<22}      n/a")


def _cmd_simulate(args: argparse.Namespace) -> int:
    spec = ExperimentSpec.from_json(Path(args.spec).read_text())
    result = run_experiment(spec, workers=args.workers)
    if result.csv_path is not None:
        print(f"wrote {result.csv_path}")
        print(f"wrote {result.manifest_path}")
    print(f"{spec.replications} replications, n={spec.n_doctors}, "
          f"lambda_d={spec.lambda_d}, lambda_h={spec.lambda_h}")
    _print_summary(result.summary)
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    spec = ExperimentSpec.from_json(Path(args.spec).read_text())
    rows = run_sweep(spec, workers=args.workers)
    if spec.output_path is not None:
        print(f"wrote {spec.output_path}")
    for row in rows:
        print(
            f"  lambda_d={row['lambda_d']:.2f} lambda_h={row['lambda_h']:.2f} "
            f"first-rank={row['first_rank_fraction']:.3f} "
            f"same-partner={row['same_partner_fraction']:.3f}"
        )
    return 0


def _cmd_replicate_table1(args: argparse.Namespace) -> int:
    sizes = TABLE1_SIZES if args.size == "all" else (int(args.size),)
    outdir = Path(args.output)
    for n in sizes:
        replications = args.replications or TABLE1_REPLICATIONS[n]
        for lam in args.lambdas:
            spec = ExperimentSpec(
                n_doctors=n,
                n_hospitals=n,
                lambda_d=lam,
                lambda_h=lam,
                replications=replications,
                k=5,
                k_prime=5,
                seed=args.seed,
                output_path=str(outdir / f"table1_n{n}_lambda{lam}.csv"),
            )
            result = run_experiment(spec, workers=args.workers)
            print(f"n={n} lambda={lam} ({replications} replications) -> {result.csv_path}")
            _print_summary(result.summary)
    return 0


def _cmd_replicate_figure1(args: argparse.Namespace) -> int:
    spec = ExperimentSpec(
        n_doctors=args.n,
        n_hospitals=args.n,
        lambda_d=0.0,  # placeholder; the sweep grid supplies the weights
        lambda_h=0.0,
        replications=args.replications,
        mechanisms=("DA",),
        seed=args.seed,
        sweep=None,
        output_path=args.output,
    )
    rows = run_sweep(spec, workers=args.workers)
    print(f"swept {len(rows)} cells at n={args.n}, {args.replications} replications each")
    if spec.output_path is not None:
        print(f"wrote {spec.output_path}")
    return 0


def _cmd_example_paper(_: argparse.Namespace) -> int:
    print(run_paper_example())
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    report = run_verification(
        n=args.n, trials=args.trials, seed=args.seed, k=args.k, k_prime=args.k_prime
    )
    print(
        f"verified {report['trials']} random {report['n']}x{report['n']} markets "
        f"against the exhaustive oracle"
    )
    if report["failures"]:
        for failure in report["failures"]:
            print(f"  FAIL {failure}", file=sys.stderr)
        return 1
    print("  all checks passed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="interview-match",
        description="Matching-market simulations with an interview stage before the match.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run an experiment spec (JSON)")
    p.add_argument("--spec", required=True, help="path to an ExperimentSpec JSON file")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("sweep", help="run a lambda grid sweep from a spec (JSON)")
    p.add_argument("--spec", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("replicate-table1", help="rerun the benchmark match-statistics study")
    p.add_argument("--size", choices=["50", "1700", "all"], default="all")
    p.add_argument("--lambdas", type=float, nargs="+", default=list(TABLE1_LAMBDAS))
    p.add_argument("--replications", type=int, default=None,
                   help="override the per-size default (340 at n=50, 10 at n=1700)")
    p.add_argument("--seed", type=int, default=20200508)
    p.add_argument("--output", default="table1")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_replicate_table1)

    p = sub.add_parser("replicate-figure1", help="rerun the benchmark DA sweep")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--replications", type=int, default=500)
    p.add_argument("--seed", type=int, default=20200508)
    p.add_argument("--output", default="figure1_sweep.csv")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_replicate_figure1)

    p = sub.add_parser("example-paper", help="trace the bundled 3x4 worked example")
    p.set_defaults(func=_cmd_example_paper)

    p = sub.add_parser("verify", help="oracle property battery on random markets")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--k-prime", dest="k_prime", type=int, default=2)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
