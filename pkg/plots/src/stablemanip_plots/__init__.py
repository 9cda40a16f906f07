"""Line-chart rendering for stable-manipulation experiment CSVs."""

__version__ = "0.1.0"

from .render import PlotError, PlotSpec, ResultRow, build_figure, read_results, render

__all__ = [
    "PlotError",
    "PlotSpec",
    "ResultRow",
    "build_figure",
    "read_results",
    "render",
]
