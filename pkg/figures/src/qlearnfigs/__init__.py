"""Figure rendering for qlearnrate sweep datasets."""
from .render import RenderError, read_csv, render
from .specs import SPECS, FigureSpec, InsetSpec, SeriesStyle

__version__ = "0.1.0"
