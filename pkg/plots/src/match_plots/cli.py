"""Script entry point: flags mirror the PlotSpec fields."""
from __future__ import annotations

import argparse
import sys

from .render import FIGURE_KINDS, PlotSpec, SchemaError, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="match-plots",
        description="Render comparison figures from simulation CSV artifacts.",
    )
    parser.add_argument("--input-csv", required=True, help="records or sweep CSV")
    parser.add_argument("--kind", required=True, choices=FIGURE_KINDS)
    parser.add_argument("--output", required=True, help="image path (.png or .svg)")
    parser.add_argument("--x-label", default=None)
    parser.add_argument("--y-label", default=None)
    parser.add_argument(
        "--mechanisms",
        nargs="*",
        default=None,
        help="mechanism filter for table1-bars (default: all present)",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    spec = PlotSpec(
        input_csv=args.input_csv,
        kind=args.kind,
        output_path=args.output,
        x_label=args.x_label,
        y_label=args.y_label,
        mechanisms=tuple(args.mechanisms) if args.mechanisms is not None else None,
    )
    try:
        render(spec)
    except (SchemaError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    print(f"wrote {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
