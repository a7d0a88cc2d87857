"""Figure rendering for seqfuse sweep CSVs."""

from .render import ColumnError, render
from .specs import CSV_COLUMNS, FIGURES, FigureSpec

__version__ = "0.1.0"
