"""Command-line front end.

Commands: ``run`` (single configuration with replicates), ``sweep`` (grid
over p/F/phi/R), ``network`` (generator diagnostics), and ``battery``
(initial-condition sensitivity). Configuration comes from a versioned JSON
file; command-line flags override file values. Environment variables are
never consulted.

Output layout: <outdir>/<experiment-name>/<label>/ containing
timeseries.csv, timeseries_smoothed.csv, summary.json, per-replicate CSVs,
and for sweeps sweep.csv + manifest.json. Files are written to a temp name
and atomically renamed; an interrupted sweep resumes from its manifest.
"""

from __future__ import annotations

import dataclasses
import json
import sys
import time
from pathlib import Path

import click
import numpy as np

from .core import AgentType, DimeDistributionTable
from .engine import (
    ModelParams,
    RunResult,
    atomic_write_text,
    rolling_average,
    run_replicates,
    summary_dict,
    timeseries_csv_text,
    write_timeseries_csv,
)
from .experiments import (
    PRESETS,
    SweepSpec,
    initial_condition_battery,
    run_sweep,
    sweep_cell_rows,
    SWEEP_COLUMNS,
)
from .network import (
    NetworkParams,
    generate_erdos_renyi,
    generate_holme_kim,
    graph_stats,
)

CONFIG_VERSION = 1

_CONFIG_KEYS = {
    "version",
    "name",
    "preset",
    "params",
    "network",
    "table",
    "replicates",
    "rolling_window",
    "workers",
    "label",
    "sweep",
}

_TABLE_KEYS = {
    "initial_mean", "initial_sd", "beta_mean", "beta_sd",
    "lambda_mean", "lambda_sd", "gamma_mean", "gamma_sd",
}


class ConfigError(click.ClickException):
    exit_code = 2


def load_config(path: str | None) -> dict:
    if path is None:
        return {}
    file = Path(path)
    if not file.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        data = json.loads(file.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: line {exc.lineno}: {exc.msg}")
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must be a JSON object")
    version = data.get("version", CONFIG_VERSION)
    if version != CONFIG_VERSION:
        raise ConfigError(f"unsupported config version {version} (expected {CONFIG_VERSION})")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return data


def build_table(config: dict) -> DimeDistributionTable:
    overrides = config.get("table") or {}
    unknown = set(overrides) - _TABLE_KEYS
    if unknown:
        raise ConfigError(f"unknown table keys: {sorted(unknown)}")
    base = dataclasses.asdict(DimeDistributionTable.default())
    base.update({k: np.asarray(v, dtype=float) for k, v in overrides.items()})
    try:
        return DimeDistributionTable(**base)
    except ValueError as exc:
        raise ConfigError(f"invalid table override: {exc}")


def build_params(config: dict, preset: str | None, overrides: dict) -> ModelParams:
    preset = preset or config.get("preset")
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigError(f"unknown preset {preset!r}; choose from {sorted(PRESETS)}")
        base = PRESETS[preset].to_dict()
    else:
        base = ModelParams().to_dict()
    file_params = config.get("params") or {}
    unknown = set(file_params) - set(base)
    if unknown:
        raise ConfigError(f"unknown params keys: {sorted(unknown)}")
    base.update(file_params)
    base.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return ModelParams.from_dict(base)
    except ValueError as exc:
        raise ConfigError(f"invalid params: {exc}")


def build_network_params(config: dict, n: int) -> NetworkParams:
    net = dict(config.get("network") or {})
    unknown = set(net) - {"n", "m", "m_t", "n0"}
    if unknown:
        raise ConfigError(f"unknown network keys: {sorted(unknown)}")
    net.setdefault("n", n)
    if net["n"] != n:
        raise ConfigError(f"network.n ({net['n']}) must match params.n ({n})")
    try:
        return NetworkParams(**net)
    except ValueError as exc:
        raise ConfigError(f"invalid network params: {exc}")


def resolve_outdir(outdir: str, name: str, label: str | None) -> Path:
    label = label or time.strftime("%Y%m%d-%H%M%S")
    target = Path(outdir) / name / label
    target.mkdir(parents=True, exist_ok=True)
    return target


def resolved_config(name, label, params, net_params, table, replicates,
                    rolling_window, workers) -> dict:
    return {
        "version": CONFIG_VERSION,
        "name": name,
        "label": label,
        "params": params.to_dict(),
        "network": dataclasses.asdict(net_params),
        "table": {k: list(v) for k, v in dataclasses.asdict(table).items()},
        "replicates": replicates,
        "rolling_window": rolling_window,
        "workers": workers,
    }


def print_steady_table(result: RunResult) -> None:
    steady = result.steady_state
    click.echo("steady-state population fractions:")
    for t in AgentType:
        click.echo(f"  {t.abbreviation}  {t.name.lower():<20s} {steady.type_fractions[t]:8.4f}")
    dime = steady.mean_dime
    click.echo(
        "steady-state mean DIME: "
        f"D={dime[0]:.2f} I={dime[1]:.2f} M={dime[2]:.2f} E={dime[3]:.2f}"
    )


def smoothed_result(result: RunResult, window: int) -> RunResult:
    return dataclasses.replace(
        result,
        type_fractions=rolling_average(result.type_fractions, window),
        mean_dime=rolling_average(result.mean_dime, window),
        authority=rolling_average(result.authority, window),
        success_fraction=rolling_average(result.success_fraction, window),
    )


_param_options = [
    click.option("--config", "config_path", type=str, default=None,
                 help="JSON config file."),
    click.option("--preset", type=click.Choice(sorted(PRESETS)), default=None),
    click.option("--seed", type=int, default=None),
    click.option("--workers", type=int, default=None, help="Replicate worker processes."),
    click.option("--outdir", type=str, default="results"),
    click.option("--label", type=str, default=None,
                 help="Run label (defaults to a timestamp)."),
    click.option("--replicates", type=int, default=None),
    click.option("--p", "p", type=float, default=None),
    click.option("--F", "f", type=float, default=None),
    click.option("--phi", type=float, default=None),
    click.option("--R", "r", type=int, default=None),
    click.option("--n", type=int, default=None),
    click.option("--T", "t", type=int, default=None),
]


def param_options(func):
    for option in reversed(_param_options):
        func = option(func)
    return func


@click.group()
def main():
    """Agent-based simulator of protest dynamics under authority signalling."""


def _common_setup(config_path, preset, seed, workers, replicates, outdir, label,
                  default_name, **param_overrides):
    config = load_config(config_path)
    params = build_params(config, preset, {**param_overrides, "seed": seed})
    table = build_table(config)
    net_params = build_network_params(config, params.n)
    replicates = replicates if replicates is not None else config.get("replicates", 1)
    if replicates < 1:
        raise ConfigError("replicates must be >= 1")
    workers = workers if workers is not None else config.get("workers", 1)
    rolling_window = config.get("rolling_window", 20)
    name = config.get("name") or preset or default_name
    label = label or config.get("label")
    target = resolve_outdir(outdir, name, label)
    resolved = resolved_config(
        name, target.name, params, net_params, table, replicates, rolling_window, workers
    )
    return params, table, net_params, replicates, workers, rolling_window, target, resolved


@main.command("run")
@param_options
def cmd_run(config_path, preset, seed, workers, outdir, label, replicates,
            p, f, phi, r, n, t):
    """Run one configuration with replicates and write result artifacts."""
    params, table, net_params, replicates, workers, rolling_window, target, resolved = (
        _common_setup(config_path, preset, seed, workers, replicates, outdir, label,
                      "run", p=p, f=f, phi=phi, r=r, n=n, t=t)
    )
    result = run_replicates(
        params, replicates, table=table, net_params=net_params, workers=workers
    )
    write_timeseries_csv(result, target / "timeseries.csv")
    write_timeseries_csv(
        smoothed_result(result, rolling_window), target / "timeseries_smoothed.csv"
    )
    if result.replicates:
        for k, rep in enumerate(result.replicates):
            write_timeseries_csv(rep, target / f"replicate_{k:03d}.timeseries.csv")
    from .engine import write_summary_json

    write_summary_json(result, target / "summary.json", extra={"config": resolved})
    print_steady_table(result)
    click.echo(f"artifacts written to {target}")


@main.command("sweep")
@param_options
def cmd_sweep(config_path, preset, seed, workers, outdir, label, replicates,
              p, f, phi, r, n, t):
    """Run a parameter grid sweep; resumes from an existing manifest."""
    config = load_config(config_path)
    sweep_config = config.get("sweep")
    if not sweep_config:
        raise ConfigError("sweep command requires a config with a 'sweep' section")
    unknown = set(sweep_config) - {"axes", "replicates"}
    if unknown:
        raise ConfigError(f"unknown sweep keys: {sorted(unknown)}")
    params, table, net_params, replicates, workers, rolling_window, target, resolved = (
        _common_setup(config_path, preset, seed, workers,
                      replicates or sweep_config.get("replicates"),
                      outdir, label, "sweep", p=p, f=f, phi=phi, r=r, n=n, t=t)
    )
    try:
        spec = SweepSpec(axes=sweep_config["axes"], fixed=params, replicates=replicates)
    except ValueError as exc:
        raise ConfigError(str(exc))

    manifest_path = target / "manifest.json"
    csv_path = target / "sweep.csv"
    completed: list = []
    if manifest_path.is_file():
        completed = json.loads(manifest_path.read_text())["completed"]
        click.echo(f"resuming sweep: {len(completed)} cells already done")
    if not csv_path.is_file():
        atomic_write_text(csv_path, ",".join(SWEEP_COLUMNS) + "\n")
    skip = {tuple(sorted((k, v) for k, v in cell)) for cell in
            (tuple(map(tuple, c)) for c in completed)} if completed else set()
    skip = {tuple((k, v) for k, v in key) for key in skip}

    def on_cell(cell):
        with open(csv_path, "a", encoding="utf-8") as fh:
            fh.write("\n".join(sweep_cell_rows(cell)) + "\n")
        completed.append(sorted(cell.coordinates.items()))
        atomic_write_text(
            manifest_path,
            json.dumps({"config": resolved, "sweep": sweep_config,
                        "completed": completed}, indent=2) + "\n",
        )

    run_sweep(spec, table=table, net_params=net_params, workers=workers,
              on_cell=on_cell, skip=skip)
    click.echo(f"sweep complete: {len(completed)} cells in {target}")


@main.command("network")
@click.option("--generator", type=click.Choice(["holme-kim", "erdos-renyi"]),
              default="holme-kim")
@click.option("--n", type=int, default=1000)
@click.option("--m", type=int, default=6)
@click.option("--mt", "m_t", type=float, default=5.0)
@click.option("--n0", type=int, default=13)
@click.option("--edge-prob", type=float, default=0.01)
@click.option("--seed", type=int, default=0)
@click.option("--outdir", type=str, default=None)
def cmd_network(generator, n, m, m_t, n0, edge_prob, seed, outdir):
    """Generate a graph and report its statistics."""
    rng = np.random.default_rng(seed)
    try:
        if generator == "holme-kim":
            graph = generate_holme_kim(NetworkParams(n=n, m=m, m_t=m_t, n0=n0), rng)
        else:
            graph = generate_erdos_renyi(n, edge_prob, rng)
    except ValueError as exc:
        raise ConfigError(str(exc))
    stats = graph_stats(graph)
    click.echo(f"generator: {generator}")
    click.echo(f"nodes: {graph.node_count}  edges: {graph.edge_count}")
    click.echo(f"mean degree: {stats.mean_degree}")
    click.echo(f"global clustering: {stats.global_clustering:.4f}")
    click.echo(f"characteristic path length: {stats.characteristic_path_length:.4f}"
               + ("" if stats.connected else " (largest component; graph disconnected)"))
    if outdir:
        target = Path(outdir)
        target.mkdir(parents=True, exist_ok=True)
        graph.save_edge_list(target / "graph.edges")
        atomic_write_text(target / "degree_histogram.csv", stats.histogram_csv())
        click.echo(f"artifacts written to {target}")


@main.command("battery")
@param_options
def cmd_battery(config_path, preset, seed, workers, outdir, label, replicates,
                p, f, phi, r, n, t):
    """Initial-condition sensitivity: run all five starting populations."""
    params, table, net_params, replicates, workers, rolling_window, target, resolved = (
        _common_setup(config_path, preset, seed, workers, replicates, outdir, label,
                      "battery", p=p, f=f, phi=phi, r=r, n=n, t=t)
    )
    results = initial_condition_battery(
        params, table=table, replicates=replicates, net_params=net_params, workers=workers
    )
    header = ["initial_condition"] + [t_.name.lower() for t_ in AgentType]
    lines = [",".join(header)]
    click.echo("  ".join(f"{h:<22s}" for h in header[:1])
               + "  ".join(t_.abbreviation for t_ in AgentType))
    for variant, result in results.items():
        fractions = result.steady_state.type_fractions
        lines.append(",".join([variant.value] + [repr(float(v)) for v in fractions]))
        click.echo(f"{variant.value:<24s}" + " ".join(f"{v:6.3f}" for v in fractions))
    atomic_write_text(target / "battery.csv", "\n".join(lines) + "\n")
    atomic_write_text(
        target / "battery_summary.json",
        json.dumps({"config": resolved,
                    "steady_state": {v.value: summary_dict(res)["steady_state"]
                                     for v, res in results.items()}}, indent=2) + "\n",
    )
    click.echo(f"artifacts written to {target}")


if __name__ == "__main__":
    main()
