"""Rendering of simulation CSV artifacts into publication-style figures.

This package never computes model dynamics; it is a strict downstream
consumer of the CSV schemas written by the simulator's command-line tools.
"""

from .plots import (
    SchemaError,
    TYPE_ABBREVIATIONS,
    TYPE_COLUMNS,
    load_csv,
    plot_contour,
    plot_dominant_map,
    plot_timeseries,
)

__all__ = [
    "SchemaError",
    "TYPE_ABBREVIATIONS",
    "TYPE_COLUMNS",
    "load_csv",
    "plot_contour",
    "plot_dominant_map",
    "plot_timeseries",
]

__version__ = "0.1.0"
