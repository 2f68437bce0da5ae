"""Render fskjcr experiment CSVs into figures.

Consumes only the CSV files the ``fskjcr`` command writes; all statistics
live upstream, this package just draws them.
"""

__version__ = "0.1.0"

from .figures import FIGURES, FigureSpec, build_figure, render
from .reader import Table, read_table

__all__ = [
    "__version__",
    "Table",
    "read_table",
    "FigureSpec",
    "FIGURES",
    "build_figure",
    "render",
]
