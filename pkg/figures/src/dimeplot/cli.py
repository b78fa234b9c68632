"""Command-line entry point for rendering figures from simulator CSVs."""

from __future__ import annotations

import click

from .plots import (
    SchemaError,
    TYPE_ORDER,
    plot_contour,
    plot_dominant_map,
    plot_timeseries,
)


@click.group()
def main() -> None:
    """Render figures from simulation timeseries and sweep CSV files."""


def _render(func, *args) -> None:
    try:
        func(*args)
    except (SchemaError, ValueError, OSError) as exc:
        raise click.ClickException(str(exc)) from exc


@main.command("timeseries")
@click.option("--input", "input_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Timeseries CSV produced by a simulation run.")
@click.option("--output", "output_path", required=True,
              type=click.Path(dir_okay=False), help="Image file to write.")
@click.option("--kind", type=click.Choice(["types", "dime"]),
              default="types", show_default=True,
              help="Population fractions or mean psychological state.")
def cmd_timeseries(input_path: str, output_path: str, kind: str) -> None:
    """Plot a run's composition or state means over time."""
    _render(plot_timeseries, input_path, output_path, kind)
    click.echo(f"wrote {output_path}")


@main.command("contour")
@click.option("--input", "input_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Long-format sweep CSV.")
@click.option("--output", "output_path", required=True,
              type=click.Path(dir_okay=False), help="Image file to write.")
@click.option("--value", required=True,
              help="Agent type (e.g. " + TYPE_ORDER[0] + ") or mean_* column.")
def cmd_contour(input_path: str, output_path: str, value: str) -> None:
    """Filled contour of one quantity over the sweep's two varying axes."""
    _render(plot_contour, input_path, output_path, value)
    click.echo(f"wrote {output_path}")


@main.command("dominant")
@click.option("--input", "input_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Long-format sweep CSV.")
@click.option("--output", "output_path", required=True,
              type=click.Path(dir_okay=False), help="Image file to write.")
def cmd_dominant(input_path: str, output_path: str) -> None:
    """Categorical map of the dominant agent type per sweep cell."""
    _render(plot_dominant_map, input_path, output_path)
    click.echo(f"wrote {output_path}")
