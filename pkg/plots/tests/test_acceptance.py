"""Acceptance: plotted values reproduce CSV aggregates; the headline contrast
between interview-based and mechanical truncation is visible in the bars."""
from __future__ import annotations

import csv
from pathlib import Path

from match_plots.render import BAR_STATISTICS, PlotSpec, render

DATA = Path(__file__).parent / "data"


def test_criterion_9_plot_fidelity(tmp_path):
    try:
        sweep = DATA / "sweep.csv"
        records = DATA / "table1_n50_lambda0.5.csv"

        # fig1a / fig1b: every plotted point equals its CSV value.
        for kind, column in (
            ("fig1a", "first_rank_fraction"),
            ("fig1b", "same_partner_fraction"),
        ):
            fig = render(
                PlotSpec(input_csv=sweep, kind=kind, output_path=tmp_path / f"{kind}.png")
            )
            with open(sweep, newline="") as fh:
                rows = list(csv.DictReader(fh))
            expected = {}
            for row in rows:
                expected.setdefault(float(row["lambda_d"]), []).append(
                    (float(row["lambda_h"]), float(row[column]))
                )
            for line, lam_d in zip(fig.axes[0].get_lines(), sorted(expected)):
                points = sorted(expected[lam_d])
                assert [round(v, 3) for v in line.get_ydata()] == [
                    round(y, 3) for _, y in points
                ]
                assert list(line.get_xdata()) == [x for x, _ in points]

        # table1-bars: bar heights equal CSV aggregates to 3 decimals.
        fig = render(
            PlotSpec(
                input_csv=records, kind="table1-bars", output_path=tmp_path / "bars.png"
            )
        )
        with open(records, newline="") as fh:
            rows = list(csv.DictReader(fh))
        ax = fig.axes[0]
        labels = [t.get_text() for t in ax.get_legend().get_texts()]
        heights = {}
        for label, container in zip(labels, ax.containers):
            cells = [row for row in rows if row["mechanism"] == label]
            for (column, _), patch in zip(BAR_STATISTICS, container):
                aggregate = sum(float(row[column]) for row in cells) / len(cells)
                assert round(patch.get_height(), 3) == round(aggregate, 3)
            heights[label] = container[0].get_height()

        # The replication CSV's unmatched-rate contrast is visible.
        assert heights["Tr-DA"] > heights["Int-DA"]
        assert (tmp_path / "bars.png").exists()
    except BaseException:
        print("ACCEPTANCE 9: FAIL - plot fidelity and truncation contrast")
        raise
    print("ACCEPTANCE 9: PASS - plot fidelity and truncation contrast")
