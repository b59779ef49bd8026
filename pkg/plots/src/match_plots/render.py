"""Figure construction from the documented simulation CSV schemas.

Three figure kinds:

* ``fig1a`` - first-rank fraction versus the hospital common-component
  weight, one curve per doctor weight (sweep CSV).
* ``fig1b`` - same-partner-under-proposer-swap fraction on the same axes
  (sweep CSV).
* ``table1-bars`` - grouped bars of unmatched / first-rank / top-3 means per
  mechanism (records CSV).

Every plotted value is an aggregate of the CSV contents and nothing else.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

FIGURE_KINDS = ("fig1a", "fig1b", "table1-bars")

#: Header of a sweep CSV, as documented by the simulation toolkit.
SWEEP_COLUMNS = (
    "lambda_d",
    "lambda_h",
    "n",
    "replications",
    "first_rank_fraction",
    "same_partner_fraction",
)

#: Header of a per-replication records CSV, as documented by the toolkit.
RECORDS_COLUMNS = (
    "run_id",
    "seed",
    "n",
    "lambda_d",
    "lambda_h",
    "k",
    "k_prime",
    "mechanism",
    "proposing_side",
    "unmatched_doctors",
    "unmatched_hospitals",
    "first_rank_matched",
    "first_rank_all",
    "top3_rank_matched",
    "top3_rank_all",
    "first_rank_original_matched",
    "top3_rank_original_matched",
    "same_partner_on_swap",
    "identical_to_da",
    "blocking_matched",
    "blocking_unmatched",
)

#: Statistics drawn as bar groups, with display labels.
BAR_STATISTICS = (
    ("unmatched_doctors", "unmatched"),
    ("first_rank_all", "first-ranked"),
    ("top3_rank_all", "top-three"),
)

MECHANISM_ORDER = ("DA", "Int-DA", "Tr-DA")


class SchemaError(ValueError):
    """The input CSV does not match the documented schema."""


@dataclass(frozen=True)
class PlotSpec:
    """What to read, which panel to draw, and where to write it."""

    input_csv: str | Path
    kind: str
    output_path: str | Path
    x_label: str | None = None
    y_label: str | None = None
    mechanisms: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.kind not in FIGURE_KINDS:
            raise ValueError(f"kind must be one of {FIGURE_KINDS}, got {self.kind!r}")


def _read_csv(path: Path, expected_header: tuple[str, ...]) -> list[dict[str, str]]:
    if not path.exists():
        raise SchemaError(f"input CSV does not exist: {path}")
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = tuple(reader.fieldnames or ())
        if header != expected_header:
            raise SchemaError(
                f"unexpected CSV header in {path}: got {header}, expected {expected_header}"
            )
        rows = list(reader)
    if not rows:
        raise SchemaError(f"input CSV has no data rows: {path}")
    return rows


def _to_float(cell: str) -> float:
    return math.nan if cell == "" else float(cell)


def _sweep_series(rows: list[dict[str, str]], value_column: str):
    """Per doctor weight: the (lambda_h, value) curve, lambda_h ascending."""
    series: dict[float, list[tuple[float, float]]] = {}
    for row in rows:
        lam_d = float(row["lambda_d"])
        series.setdefault(lam_d, []).append(
            (float(row["lambda_h"]), _to_float(row[value_column]))
        )
    return {
        lam_d: sorted(points) for lam_d, points in sorted(series.items())
    }


def _draw_sweep_panel(spec: PlotSpec, value_column: str, default_y_label: str):
    rows = _read_csv(Path(spec.input_csv), SWEEP_COLUMNS)
    curves = _sweep_series(rows, value_column)
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for lam_d, points in curves.items():
        xs = [x for x, _ in points]
        ys = [y for _, y in points]
        ax.plot(xs, ys, marker="o", label=f"doctor weight {lam_d:g}")
    ax.set_xlabel(spec.x_label or "hospital common-component weight")
    ax.set_ylabel(spec.y_label or default_y_label)
    ax.set_ylim(0.0, 1.05)
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    return fig


def _aggregate_bars(rows: list[dict[str, str]], mechanisms: tuple[str, ...]):
    """Mean of each bar statistic per mechanism, skipping blank cells."""
    aggregates: dict[str, dict[str, float]] = {}
    for mechanism in mechanisms:
        cells = [row for row in rows if row["mechanism"] == mechanism]
        if not cells:
            raise SchemaError(f"no rows for mechanism {mechanism!r}")
        stats = {}
        for column, _ in BAR_STATISTICS:
            values = [
                _to_float(row[column])
                for row in cells
                if row[column] != ""
            ]
            stats[column] = sum(values) / len(values) if values else math.nan
        aggregates[mechanism] = stats
    return aggregates


def _draw_table_bars(spec: PlotSpec):
    rows = _read_csv(Path(spec.input_csv), RECORDS_COLUMNS)
    if spec.mechanisms is not None:
        mechanisms = tuple(spec.mechanisms)
    else:
        present = {row["mechanism"] for row in rows}
        mechanisms = tuple(m for m in MECHANISM_ORDER if m in present)
    if not mechanisms:
        raise SchemaError("empty mechanism filter: nothing to draw")
    aggregates = _aggregate_bars(rows, mechanisms)

    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    group_width = 0.8
    bar_width = group_width / len(mechanisms)
    for j, mechanism in enumerate(mechanisms):
        offsets = [
            i - group_width / 2 + bar_width * (j + 0.5)
            for i in range(len(BAR_STATISTICS))
        ]
        heights = [aggregates[mechanism][column] for column, _ in BAR_STATISTICS]
        ax.bar(offsets, heights, width=bar_width, label=mechanism)
    ax.set_xticks(range(len(BAR_STATISTICS)))
    ax.set_xticklabels([label for _, label in BAR_STATISTICS])
    ax.set_ylabel(spec.y_label or "fraction of doctors")
    if spec.x_label:
        ax.set_xlabel(spec.x_label)
    ax.set_ylim(0.0, 1.05)
    ax.legend(frameon=False)
    fig.tight_layout()
    return fig


def render(spec: PlotSpec):
    """Draw the requested panel and write it to ``spec.output_path``.

    Validation happens before anything is written, so a schema mismatch or
    empty input leaves no file behind.  Returns the matplotlib figure.
    """
    if spec.kind == "fig1a":
        fig = _draw_sweep_panel(spec, "first_rank_fraction", "first-rank fraction")
    elif spec.kind == "fig1b":
        fig = _draw_sweep_panel(spec, "same_partner_fraction", "same-partner fraction")
    else:
        fig = _draw_table_bars(spec)
    output = Path(spec.output_path)
    output.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(output)
    return fig
