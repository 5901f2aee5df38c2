"""Figure rendering for the driven-well simulation artifacts.

Reads only the versioned CSV/JSON schemas written by the simulation command
line; no physics is recomputed here.
"""

from .artifacts import ArtifactError, Table, read_summary, read_table
from .render import FIGURES, FigureSpec, render

__all__ = ["ArtifactError", "Table", "read_summary", "read_table",
           "FIGURES", "FigureSpec", "render"]

__version__ = "0.1.0"
