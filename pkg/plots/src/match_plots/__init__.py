"""Read-only figure rendering over the simulation toolkit's CSV artifacts.

This package never runs simulations: it consumes the two documented CSV
schemas (per-replication records and sweep cells) and draws the standard
comparison panels from whatever aggregates the files contain.
"""

__version__ = "0.1.0"

from .render import (
    FIGURE_KINDS,
    RECORDS_COLUMNS,
    SWEEP_COLUMNS,
    PlotSpec,
    SchemaError,
    render,
)

__all__ = [
    "FIGURE_KINDS",
    "RECORDS_COLUMNS",
    "SWEEP_COLUMNS",
    "PlotSpec",
    "SchemaError",
    "render",
]
