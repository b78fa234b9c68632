"""Declarative experiments: named presets, grid sweeps over (p, F, phi, R),
initial-condition sensitivity batteries, and dominant-type post-processing.

Every sweep cell derives its seed from the base seed and its own
coordinates, so cells are independent jobs whose outputs do not depend on
execution order and partial sweeps can be resumed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace

import numpy as np

from .core import AgentType, DimeDistributionTable
from .engine import (
    InitialCondition,
    ModelParams,
    PopulationSnapshot,
    RunResult,
    run_replicates,
)
from .network import NetworkParams

__all__ = [
    "PRESETS",
    "SWEEP_AXES",
    "SweepSpec",
    "SweepCell",
    "run_sweep",
    "dominant_type",
    "initial_condition_battery",
    "sweep_csv_text",
    "SWEEP_COLUMNS",
]

PRESETS: dict[str, ModelParams] = {
    # responsive authority, strong individual + collective contestation
    "responsive": ModelParams(p=0.2, f=0.2, phi=0.2, r=10),
    # intransigent authority, weak contestation
    "intransigent": ModelParams(p=0.8, f=0.8, phi=0.8, r=10),
}

SWEEP_AXES = ("p", "f", "phi", "r")


@dataclass(frozen=True)
class SweepSpec:
    """A grid sweep: axis value lists plus fixed parameter overrides."""

    axes: dict
    fixed: ModelParams = field(default_factory=ModelParams)
    replicates: int = 5

    def __post_init__(self):
        for name in self.axes:
            if name not in SWEEP_AXES:
                raise ValueError(f"unknown sweep axis {name!r}; allowed: {SWEEP_AXES}")
            if not self.axes[name]:
                raise ValueError(f"sweep axis {name!r} has no values")
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        # eagerly validate axis ranges through the params invariants
        for coords in self.grid():
            replace(self.fixed, **coords)

    def grid(self) -> list[dict]:
        """Cell coordinates in row-major order over the canonical axis order."""
        names = [a for a in SWEEP_AXES if a in self.axes]
        cells = []
        for values in itertools.product(*(self.axes[a] for a in names)):
            cells.append(dict(zip(names, values)))
        return cells


@dataclass(frozen=True)
class SweepCell:
    coordinates: dict
    steady_state: PopulationSnapshot
    dominant_type: AgentType
    dominant_fraction: float
    result: RunResult


def dominant_type(fractions: np.ndarray) -> tuple[AgentType, float]:
    """Argmax over the six steady-state type fractions.

    Ties break to the first type in AgentType enum order.
    """
    fractions = np.asarray(fractions)
    index = int(np.argmax(fractions))
    return AgentType(index), float(fractions[index])


def cell_seed(base_seed: int, coordinates: dict) -> int:
    """Seed derived from the base seed and the cell's full coordinates.

    Stable across execution order and grid shape: only the coordinate
    values matter. Float coordinates enter via their IEEE-754 bits.
    """
    entropy = [np.uint64(base_seed)]
    for name in SWEEP_AXES:
        if name in coordinates:
            value = coordinates[name]
            if isinstance(value, (int, np.integer)):
                entropy.append(np.uint64(value))
            else:
                entropy.append(np.float64(value).view(np.uint64))
    seq = np.random.SeedSequence([int(e) for e in entropy])
    return int(seq.generate_state(1, np.uint64)[0] >> np.uint64(1))


def run_cell(
    spec: SweepSpec,
    coordinates: dict,
    table: DimeDistributionTable | None = None,
    net_params: NetworkParams | None = None,
    workers: int = 1,
) -> SweepCell:
    params = replace(spec.fixed, **coordinates)
    params = replace(params, seed=cell_seed(spec.fixed.seed, coordinates))
    try:
        result = run_replicates(
            params, spec.replicates, table=table, net_params=net_params, workers=workers
        )
    except Exception as exc:
        raise RuntimeError(f"sweep cell {coordinates} failed: {exc}") from exc
    winner, fraction = dominant_type(result.steady_state.type_fractions)
    return SweepCell(
        coordinates=coordinates,
        steady_state=result.steady_state,
        dominant_type=winner,
        dominant_fraction=fraction,
        result=result,
    )


def run_sweep(
    spec: SweepSpec,
    table: DimeDistributionTable | None = None,
    net_params: NetworkParams | None = None,
    workers: int = 1,
    on_cell=None,
    skip: set | None = None,
) -> list[SweepCell]:
    """Run every grid cell; ``on_cell`` receives each finished cell so
    callers can persist results incrementally. Cells whose coordinate tuple
    is in ``skip`` are not re-run (resume support); they are absent from the
    returned list.
    """
    cells = []
    for coordinates in spec.grid():
        key = tuple(sorted(coordinates.items()))
        if skip and key in skip:
            continue
        cell = run_cell(spec, coordinates, table=table, net_params=net_params, workers=workers)
        if on_cell is not None:
            on_cell(cell)
        cells.append(cell)
    return cells


def initial_condition_battery(
    scenario: ModelParams,
    table: DimeDistributionTable | None = None,
    replicates: int = 5,
    net_params: NetworkParams | None = None,
    workers: int = 1,
) -> dict[InitialCondition, RunResult]:
    """Run all five initial-condition variants with a shared replicate count."""
    results = {}
    for variant in InitialCondition:
        params = replace(scenario, initial_condition=variant)
        results[variant] = run_replicates(
            params, replicates, table=table, net_params=net_params, workers=workers
        )
    return results


SWEEP_COLUMNS = [
    "p", "F", "phi", "R", "type", "fraction",
    "mean_D", "mean_I", "mean_M", "mean_E",
]


def sweep_cell_rows(cell: SweepCell) -> list[str]:
    """Long-format CSV rows for one cell: one row per agent type."""
    params = cell.result.params
    coords = [repr(float(params.p)), repr(float(params.f)),
              repr(float(params.phi)), str(params.r)]
    dime = [repr(float(v)) for v in cell.steady_state.mean_dime]
    rows = []
    for t in AgentType:
        fraction = repr(float(cell.steady_state.type_fractions[t]))
        rows.append(",".join(coords + [t.name.lower(), fraction] + dime))
    return rows


def sweep_csv_text(cells) -> str:
    lines = [",".join(SWEEP_COLUMNS)]
    for cell in cells:
        lines.extend(sweep_cell_rows(cell))
    return "\n".join(lines) + "\n"
