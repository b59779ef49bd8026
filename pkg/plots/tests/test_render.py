"""Rendering: plotted values equal CSV aggregates; bad inputs leave no file."""
from __future__ import annotations

import csv
import math
from pathlib import Path

import pytest

from match_plots.render import (
    BAR_STATISTICS,
    RECORDS_COLUMNS,
    SWEEP_COLUMNS,
    PlotSpec,
    SchemaError,
    render,
)
from match_plots.cli import main as cli_main

DATA = Path(__file__).parent / "data"
SWEEP_CSV = DATA / "sweep.csv"
RECORDS_CSV = DATA / "table1_n50_lambda0.5.csv"


def read_rows(path: Path) -> list[dict[str, str]]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def sweep_expected(value_column: str) -> dict[float, list[tuple[float, float]]]:
    curves: dict[float, list[tuple[float, float]]] = {}
    for row in read_rows(SWEEP_CSV):
        curves.setdefault(float(row["lambda_d"]), []).append(
            (float(row["lambda_h"]), float(row[value_column]))
        )
    return {k: sorted(v) for k, v in curves.items()}


@pytest.mark.parametrize(
    "kind,column",
    [("fig1a", "first_rank_fraction"), ("fig1b", "same_partner_fraction")],
)
def test_sweep_panels_plot_csv_values_exactly(tmp_path, kind, column):
    out = tmp_path / f"{kind}.png"
    fig = render(PlotSpec(input_csv=SWEEP_CSV, kind=kind, output_path=out))
    assert out.exists()
    expected = sweep_expected(column)
    lines = fig.axes[0].get_lines()
    assert len(lines) == len(expected)
    for line, (lam_d, points) in zip(lines, expected.items()):
        xs = list(line.get_xdata())
        ys = list(line.get_ydata())
        assert xs == [x for x, _ in points]
        assert ys == [y for _, y in points]  # bit-equal, not just 3 decimals
        assert f"{lam_d:g}" in line.get_label()


def test_sweep_panel_svg_output(tmp_path):
    out = tmp_path / "fig1a.svg"
    render(PlotSpec(input_csv=SWEEP_CSV, kind="fig1a", output_path=out))
    assert out.exists() and out.read_bytes().startswith(b"<?xml")


def test_axis_labels_override(tmp_path):
    fig = render(
        PlotSpec(
            input_csv=SWEEP_CSV,
            kind="fig1b",
            output_path=tmp_path / "fig.png",
            x_label="hospital weight",
            y_label="unique-partner share",
        )
    )
    ax = fig.axes[0]
    assert ax.get_xlabel() == "hospital weight"
    assert ax.get_ylabel() == "unique-partner share"


def records_aggregates() -> dict[str, dict[str, float]]:
    rows = read_rows(RECORDS_CSV)
    aggregates: dict[str, dict[str, float]] = {}
    for mechanism in {row["mechanism"] for row in rows}:
        cells = [row for row in rows if row["mechanism"] == mechanism]
        aggregates[mechanism] = {
            column: sum(float(row[column]) for row in cells) / len(cells)
            for column, _ in BAR_STATISTICS
        }
    return aggregates


def test_table_bars_match_csv_aggregates(tmp_path):
    out = tmp_path / "bars.png"
    fig = render(PlotSpec(input_csv=RECORDS_CSV, kind="table1-bars", output_path=out))
    assert out.exists()
    expected = records_aggregates()
    ax = fig.axes[0]
    legend_labels = [t.get_text() for t in ax.get_legend().get_texts()]
    assert legend_labels == ["DA", "Int-DA", "Tr-DA"]
    containers = ax.containers
    assert len(containers) == 3
    for mechanism, container in zip(legend_labels, containers):
        heights = [patch.get_height() for patch in container]
        wants = [expected[mechanism][column] for column, _ in BAR_STATISTICS]
        for got, want in zip(heights, wants):
            assert got == pytest.approx(want, abs=5e-4)  # 3-decimal fidelity


def test_table_bars_show_truncation_contrast(tmp_path):
    # The benchmark contrast: mechanical top-k truncation leaves far more
    # doctors unmatched than interview-based truncation.
    fig = render(
        PlotSpec(
            input_csv=RECORDS_CSV,
            kind="table1-bars",
            output_path=tmp_path / "bars.png",
            mechanisms=("Int-DA", "Tr-DA"),
        )
    )
    ax = fig.axes[0]
    unmatched = {
        label.get_text(): container[0].get_height()
        for label, container in zip(ax.get_legend().get_texts(), ax.containers)
    }
    assert unmatched["Tr-DA"] > 4 * unmatched["Int-DA"]
    assert unmatched["Int-DA"] < 0.12


def test_mechanism_filter_subset(tmp_path):
    fig = render(
        PlotSpec(
            input_csv=RECORDS_CSV,
            kind="table1-bars",
            output_path=tmp_path / "bars.png",
            mechanisms=("DA",),
        )
    )
    assert len(fig.axes[0].containers) == 1


def test_empty_mechanism_filter_errors_and_writes_nothing(tmp_path):
    out = tmp_path / "bars.png"
    with pytest.raises(SchemaError, match="empty mechanism filter"):
        render(
            PlotSpec(
                input_csv=RECORDS_CSV,
                kind="table1-bars",
                output_path=out,
                mechanisms=(),
            )
        )
    assert not out.exists()


def test_unknown_mechanism_errors(tmp_path):
    with pytest.raises(SchemaError, match="no rows for mechanism"):
        render(
            PlotSpec(
                input_csv=RECORDS_CSV,
                kind="table1-bars",
                output_path=tmp_path / "bars.png",
                mechanisms=("SD",),
            )
        )


def test_schema_mismatch_errors_and_writes_nothing(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("alpha,beta\n1,2\n")
    out = tmp_path / "fig.png"
    for kind in ("fig1a", "fig1b", "table1-bars"):
        with pytest.raises(SchemaError, match="unexpected CSV header"):
            render(PlotSpec(input_csv=bad, kind=kind, output_path=out))
    assert not out.exists()


def test_empty_csv_errors(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text(",".join(SWEEP_COLUMNS) + "\n")
    with pytest.raises(SchemaError, match="no data rows"):
        render(PlotSpec(input_csv=empty, kind="fig1a", output_path=tmp_path / "f.png"))


def test_missing_file_errors(tmp_path):
    with pytest.raises(SchemaError, match="does not exist"):
        render(
            PlotSpec(
                input_csv=tmp_path / "nothing.csv",
                kind="fig1a",
                output_path=tmp_path / "f.png",
            )
        )


def test_invalid_kind_rejected(tmp_path):
    with pytest.raises(ValueError, match="kind must be one of"):
        PlotSpec(input_csv=SWEEP_CSV, kind="pie", output_path=tmp_path / "f.png")


def test_blank_cells_are_skipped_in_aggregation(tmp_path):
    # The records schema writes NaN statistics as empty cells; aggregation
    # must skip them rather than crash or count zeros.
    rows = read_rows(RECORDS_CSV)
    path = tmp_path / "blanks.csv"
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(RECORDS_COLUMNS))
        writer.writeheader()
        for i, row in enumerate(rows):
            if i % 2 == 0:
                row = dict(row)
                row["unmatched_doctors"] = ""
            writer.writerow(row)
    fig = render(
        PlotSpec(input_csv=path, kind="table1-bars", output_path=tmp_path / "f.png")
    )
    heights = [p.get_height() for p in fig.axes[0].containers[0]]
    assert all(not math.isnan(h) for h in heights)


def test_cli_renders_and_reports(tmp_path, capsys):
    out = tmp_path / "fig1a.png"
    assert (
        cli_main(
            ["--input-csv", str(SWEEP_CSV), "--kind", "fig1a", "--output", str(out)]
        )
        == 0
    )
    assert out.exists()
    assert "wrote" in capsys.readouterr().out


def test_cli_surfaces_schema_errors(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("x\n1\n")
    code = cli_main(
        ["--input-csv", str(bad), "--kind", "fig1a", "--output", str(tmp_path / "f.png")]
    )
    assert code == 1
    assert "error:" in capsys.readouterr().err
