"""Plotting primitives over the simulator's CSV artifacts.

Two schemas are consumed:

* timeseries CSV — ``step``, six ``frac_*`` population-fraction columns,
  four ``mean_*`` psychological-state columns, ``authority_signal``,
  ``success_fraction``; one row per time step.
* sweep CSV — long format with axis columns ``p``, ``F``, ``phi``, ``R``,
  then ``type``, ``fraction``, and four ``mean_*`` columns; one row per
  agent type per grid cell.

All figures are pure functions of their input files: rendering the same
CSV twice produces identical image bytes.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "SchemaError",
    "TYPE_ABBREVIATIONS",
    "TYPE_COLUMNS",
    "load_csv",
    "plot_timeseries",
    "plot_contour",
    "plot_dominant_map",
]

# canonical agent-type order; ties in dominance resolve to the first entry
TYPE_ORDER = [
    "active_conventional",
    "active_innovator",
    "active_radical",
    "latent_conventional",
    "latent_innovator",
    "latent_radical",
]

TYPE_ABBREVIATIONS = {
    "active_conventional": "AcCo",
    "active_innovator": "AcIn",
    "active_radical": "AcRa",
    "latent_conventional": "LaCo",
    "latent_innovator": "LaIn",
    "latent_radical": "LaRa",
}

TYPE_COLORS = {
    "active_conventional": "#1f77b4",
    "active_innovator": "#ff7f0e",
    "active_radical": "#d62728",
    "latent_conventional": "#2ca02c",
    "latent_innovator": "#9467bd",
    "latent_radical": "#8c564b",
}

TYPE_COLUMNS = [f"frac_{name}" for name in TYPE_ORDER]

DIME_COLUMNS = [
    "mean_disidentification",
    "mean_innovation",
    "mean_moralisation",
    "mean_energisation",
]

DIME_LABELS = ["D", "I", "M", "E"]

SWEEP_AXES = ["p", "F", "phi", "R"]


class SchemaError(ValueError):
    """The input CSV does not match the documented schema."""


def load_csv(path) -> dict[str, np.ndarray]:
    """Read a CSV into named float columns; text columns stay as strings."""
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path} is empty")
        rows = [row for row in reader if row]
    if not rows:
        raise SchemaError(f"{path} has a header but no data rows")
    columns: dict[str, np.ndarray] = {}
    for index, name in enumerate(header):
        values = [row[index] for row in rows]
        try:
            columns[name] = np.array([float(v) for v in values])
        except ValueError:
            columns[name] = np.array(values)
    return columns


def _require(columns: dict, names, path) -> None:
    for name in names:
        if name not in columns:
            raise SchemaError(f"{path} is missing required column {name!r}")


def _save(fig, output) -> None:
    fig.savefig(output, dpi=150)
    plt.close(fig)


def plot_timeseries(input_path, output_path, kind: str = "types") -> None:
    """Line plot of the population composition or mean psychological state.

    ``kind='types'`` draws the six population fractions with the standard
    abbreviations; ``kind='dime'`` draws the four state means on a 0-100 axis.
    """
    columns = load_csv(input_path)
    _require(columns, ["step"], input_path)
    steps = columns["step"]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    if kind == "types":
        _require(columns, TYPE_COLUMNS, input_path)
        for name in TYPE_ORDER:
            ax.plot(steps, columns[f"frac_{name}"],
                    label=TYPE_ABBREVIATIONS[name], color=TYPE_COLORS[name])
        ax.set_ylabel("population fraction")
        ax.set_ylim(0.0, 1.0)
    elif kind == "dime":
        _require(columns, DIME_COLUMNS, input_path)
        for name, label in zip(DIME_COLUMNS, DIME_LABELS):
            ax.plot(steps, columns[name], label=label)
        ax.set_ylabel("mean value")
        ax.set_ylim(0.0, 100.0)
    else:
        raise ValueError(f"unknown timeseries kind {kind!r}")
    ax.set_xlabel("time step")
    ax.legend(loc="center left", bbox_to_anchor=(1.01, 0.5), frameon=False)
    fig.tight_layout()
    _save(fig, output_path)


def _sweep_grid(columns, path):
    """Identify the two varying axes and return (x_name, y_name, xs, ys)."""
    _require(columns, SWEEP_AXES + ["type", "fraction"], path)
    varying = [a for a in SWEEP_AXES if len(np.unique(columns[a])) > 1]
    if len(varying) != 2:
        raise SchemaError(
            f"{path} must vary along exactly two axes to draw a 2-D figure; "
            f"found {varying or 'none'}"
        )
    x_name, y_name = varying
    xs = np.unique(columns[x_name])
    ys = np.unique(columns[y_name])
    return x_name, y_name, xs, ys


def _pivot(columns, x_name, y_name, xs, ys, values, path):
    """Arrange a value column into a (len(ys), len(xs)) grid, or fail."""
    grid = np.full((len(ys), len(xs)), np.nan)
    xi = {v: i for i, v in enumerate(xs)}
    yi = {v: i for i, v in enumerate(ys)}
    for x, y, v in zip(columns[x_name], columns[y_name], values):
        grid[yi[y], xi[x]] = v
    if np.isnan(grid).any():
        raise SchemaError(f"{path} does not cover a full rectangular grid")
    return grid


def plot_contour(input_path, output_path, value: str) -> None:
    """Filled contour of one agent-type fraction (or a mean_* column) over
    the sweep's two varying axes, with labelled level lines."""
    columns = load_csv(input_path)
    x_name, y_name, xs, ys = _sweep_grid(columns, input_path)
    if value in TYPE_ORDER:
        mask = columns["type"] == value
        if not mask.any():
            raise SchemaError(f"{input_path} has no rows for type {value!r}")
        sub = {k: v[mask] for k, v in columns.items()}
        grid = _pivot(sub, x_name, y_name, xs, ys, sub["fraction"], input_path)
        title = TYPE_ABBREVIATIONS[value]
    elif value in columns:
        first = columns["type"] == columns["type"][0]
        sub = {k: v[first] for k, v in columns.items()}
        grid = _pivot(sub, x_name, y_name, xs, ys, sub[value], input_path)
        title = value
    else:
        raise SchemaError(f"{input_path} has no column or type named {value!r}")

    fig, ax = plt.subplots(figsize=(6, 5))
    filled = ax.contourf(xs, ys, grid, levels=10, cmap="viridis")
    lines = ax.contour(xs, ys, grid, levels=filled.levels, colors="black",
                       linewidths=0.5)
    ax.clabel(lines, inline=True, fontsize=7, fmt="%.2f")
    fig.colorbar(filled, ax=ax)
    ax.set_xlabel(x_name)
    ax.set_ylabel(y_name)
    ax.set_title(title)
    fig.tight_layout()
    _save(fig, output_path)


def dominant_grid(columns, path):
    """Per-cell argmax type index and fraction over the sweep grid."""
    x_name, y_name, xs, ys = _sweep_grid(columns, path)
    stack = np.stack([
        _pivot({k: v[columns["type"] == name] for k, v in columns.items()},
               x_name, y_name, xs, ys,
               columns["fraction"][columns["type"] == name], path)
        for name in TYPE_ORDER
    ])
    winners = stack.argmax(axis=0)  # argmax takes the first on ties
    return x_name, y_name, xs, ys, winners, stack.max(axis=0)


def plot_dominant_map(input_path, output_path) -> None:
    """Categorical map of the dominant agent type per grid cell, shaded by
    the dominant fraction."""
    columns = load_csv(input_path)
    x_name, y_name, xs, ys, winners, fractions = dominant_grid(columns, input_path)

    fig, ax = plt.subplots(figsize=(6.5, 5))
    base = np.array([matplotlib.colors.to_rgb(TYPE_COLORS[name])
                     for name in TYPE_ORDER])
    shade = 0.35 + 0.65 * fractions[..., None]
    image = base[winners] * shade
    ax.imshow(image, origin="lower", aspect="auto",
              extent=(xs[0], xs[-1], ys[0], ys[-1]))
    ax.set_xlabel(x_name)
    ax.set_ylabel(y_name)
    ax.set_title("dominant agent type")
    handles = [plt.Rectangle((0, 0), 1, 1, color=TYPE_COLORS[name])
               for name in TYPE_ORDER]
    ax.legend(handles, [TYPE_ABBREVIATIONS[n] for n in TYPE_ORDER],
              loc="center left", bbox_to_anchor=(1.02, 0.5), frameon=False)
    fig.tight_layout()
    _save(fig, output_path)
