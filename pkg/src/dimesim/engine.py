"""Simulation engine: one run's four-phase time step, RNG management,
Monte Carlo replicates, and per-step metrics collection.

Determinism contract: a (seed, params, table) triple fully determines every
output bit. Each time step consumes random draws in a fixed documented
order: one uniform for the authority broadcast, then n uniforms for the
individual re-framing draws in agent-index order, then an (n, 4) block of
uniforms for the DIME noise in agent-index, dimension order. The draws are
consumed on every step regardless of the broadcast outcome, so trajectories
of different parameterisations with the same seed share their randomness.

Replicates use independent generators seeded as base seed + replicate
index, so results are identical for any worker count.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from .core import AgentType, DimeDistributionTable, Signal
from .network import NetworkParams, SocialGraph, generate_holme_kim
from .signals import collective_reframe, individual_reframe_many

__all__ = [
    "CoeffMode",
    "InitialCondition",
    "NoiseMode",
    "ModelParams",
    "PopulationSnapshot",
    "RunResult",
    "SimulationState",
    "init_run",
    "step",
    "run",
    "run_replicates",
    "rolling_average",
    "write_timeseries_csv",
    "write_summary_json",
    "atomic_write_text",
    "TIMESERIES_COLUMNS",
]


class CoeffMode(str, Enum):
    """Whether regression gradients are sampled once per run or per agent."""

    PER_RUN = "per-run"
    PER_AGENT = "per-agent"


class InitialCondition(str, Enum):
    ALL_ACTIVE_CONVENTIONAL = "all-active-conventional"
    ALL_LATENT_CONVENTIONAL = "all-latent-conventional"
    ALL_ACTIVE_RADICAL = "all-active-radical"
    ALL_LATENT_RADICAL = "all-latent-radical"
    RANDOM = "random"


class NoiseMode(str, Enum):
    """Distribution of the per-step noise added to each DIME variable.

    ``symmetric`` (uniform on [-1, 1]) is the calibrated default: it keeps
    the noise ceiling at +1 while contributing no mean drift, which is what
    reproduces the published steady-state compositions.  ``unit-uniform``
    (uniform on [0, 1], +0.5 mean drift) and ``centered`` (uniform on
    [-0.5, 0.5]) are retained for sensitivity analysis.
    """

    SYMMETRIC = "symmetric"
    UNIT_UNIFORM = "unit-uniform"
    CENTERED = "centered"


@dataclass(frozen=True)
class ModelParams:
    """Full parameterisation of one simulation run."""

    p: float = 0.2
    f: float = 0.2
    phi: float = 0.2
    r: int = 10
    n: int = 1000
    t: int = 10_000
    seed: int = 0
    coeff_mode: CoeffMode = CoeffMode.PER_AGENT
    initial_condition: InitialCondition = InitialCondition.ALL_ACTIVE_CONVENTIONAL
    noise_mode: NoiseMode = NoiseMode.SYMMETRIC
    steady_window: int = 500

    def __post_init__(self):
        for name in ("p", "f", "phi"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        if self.r < 1:
            raise ValueError("r must be >= 1")
        if self.n < 2:
            raise ValueError("n must be >= 2")
        if self.t < 1:
            raise ValueError("t must be >= 1")
        if self.steady_window < 1:
            raise ValueError("steady_window must be >= 1")
        object.__setattr__(self, "coeff_mode", CoeffMode(self.coeff_mode))
        object.__setattr__(self, "initial_condition", InitialCondition(self.initial_condition))
        object.__setattr__(self, "noise_mode", NoiseMode(self.noise_mode))

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "f": self.f,
            "phi": self.phi,
            "r": self.r,
            "n": self.n,
            "t": self.t,
            "seed": self.seed,
            "coeff_mode": self.coeff_mode.value,
            "initial_condition": self.initial_condition.value,
            "noise_mode": self.noise_mode.value,
            "steady_window": self.steady_window,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ModelParams":
        unknown = set(data) - {f_.name for f_ in cls.__dataclass_fields__.values()}
        if unknown:
            raise ValueError(f"unknown model parameter keys: {sorted(unknown)}")
        return cls(**data)


@dataclass(frozen=True)
class PopulationSnapshot:
    """Per-step population aggregates (or a temporal/replicate mean of them)."""

    step: int
    type_fractions: np.ndarray  # 6-vector in AgentType order
    mean_dime: np.ndarray  # 4-vector (D, I, M, E)
    authority_signal: float  # -1/+1, fractional when averaged
    success_fraction: float  # fraction perceiving success after re-framing


@dataclass
class SimulationState:
    """Mutable array-of-agents state advanced in place by :func:`step`."""

    dime: np.ndarray  # (n, 4) float64
    perceived: np.ndarray  # (n,) int8, -1 success / +1 failure
    orientation: np.ndarray  # (n,) int8 in {-1, +1}
    action: np.ndarray  # (n,) int8 in {-1, 0, +1}
    last_active: np.ndarray  # (n,) int8 in {-1, +1}
    will_act: np.ndarray  # (n,) bool
    will_innovate: np.ndarray  # (n,) bool
    beta: np.ndarray  # (4,) or (n, 4)
    lam: np.ndarray
    gamma: np.ndarray
    step_index: int = 0

    @property
    def n(self) -> int:
        return self.dime.shape[0]

    def type_counts(self) -> np.ndarray:
        """Population counts in AgentType enum order."""
        act, inn = self.will_act, self.will_innovate
        conv = self.last_active == 1
        keep = ~inn
        return np.array([
            np.count_nonzero(act & keep & conv),
            np.count_nonzero(act & inn),
            np.count_nonzero(act & keep & ~conv),
            np.count_nonzero(~act & keep & conv),
            np.count_nonzero(~act & inn),
            np.count_nonzero(~act & keep & ~conv),
        ], dtype=np.int64)


def _initial_flags(
    condition: InitialCondition,
    n: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Initial (will_act, innovate, last_active) vectors.

    The random variant consumes 3n integer draws in the order A, C, x^h.
    """
    if condition == InitialCondition.RANDOM:
        will_act = rng.integers(0, 2, n).astype(bool)
        innovate = rng.integers(0, 2, n).astype(bool)
        last_active = (rng.integers(0, 2, n) * 2 - 1).astype(np.int8)
        return will_act, innovate, last_active
    active = condition in (
        InitialCondition.ALL_ACTIVE_CONVENTIONAL,
        InitialCondition.ALL_ACTIVE_RADICAL,
    )
    conventional = condition in (
        InitialCondition.ALL_ACTIVE_CONVENTIONAL,
        InitialCondition.ALL_LATENT_CONVENTIONAL,
    )
    will_act = np.full(n, active, dtype=bool)
    innovate = np.zeros(n, dtype=bool)
    last_active = np.full(n, 1 if conventional else -1, dtype=np.int8)
    return will_act, innovate, last_active


def init_run(
    params: ModelParams,
    graph: SocialGraph,
    table: DimeDistributionTable,
    rng: np.random.Generator,
) -> SimulationState:
    """Sample coefficients and initial DIME values and set the t=0 flags.

    Draw order: beta, lambda, gamma gradients (4 normals each, or (n, 4)
    blocks in per-agent mode), then the (n, 4) block of initial DIME normals,
    then any initial-condition draws. Initial DIME values are clamped into
    [0, 100] with the same saturation used by the update.
    """
    n = params.n
    if graph.node_count != n:
        raise ValueError(
            f"graph has {graph.node_count} nodes but params.n = {n}"
        )
    if params.coeff_mode == CoeffMode.PER_AGENT:
        shape: tuple = (n, 4)
    else:
        shape = (4,)
    beta = rng.normal(table.beta_mean, table.beta_sd, shape)
    lam = rng.normal(table.lambda_mean, table.lambda_sd, shape)
    gamma = rng.normal(table.gamma_mean, table.gamma_sd, shape)

    dime = np.clip(rng.normal(table.initial_mean, table.initial_sd, (n, 4)), 0.0, 100.0)

    will_act, innovate, last_active = _initial_flags(params.initial_condition, n, rng)
    orientation = np.where(innovate, -last_active, last_active).astype(np.int8)
    action = np.where(will_act, orientation, 0).astype(np.int8)
    return SimulationState(
        dime=dime,
        perceived=np.full(n, Signal.SUCCESS, dtype=np.int8),
        orientation=orientation,
        action=action,
        last_active=last_active,
        will_act=will_act,
        will_innovate=innovate,
        beta=beta,
        lam=lam,
        gamma=gamma,
    )


def step(
    state: SimulationState,
    params: ModelParams,
    graph: SocialGraph,
    rng: np.random.Generator,
) -> PopulationSnapshot:
    """Advance one time step in place and return its snapshot.

    Phase order is strict: authority broadcast, individual re-framing,
    collective re-framing, DIME update with the prior orientation, the two
    decisions, then last-active-action / orientation / action in that order.
    """
    n = state.n
    u_draw = rng.random()
    z = rng.random(n)
    omega = rng.random((n, 4))
    if params.noise_mode == NoiseMode.SYMMETRIC:
        omega = omega * 2.0 - 1.0
    elif params.noise_mode == NoiseMode.CENTERED:
        omega -= 0.5

    if u_draw < params.p:
        authority = Signal.FAILURE
        b = individual_reframe_many(authority, state.dime[:, 0], params.f, z)
        if graph.edge_count:
            b = collective_reframe(b, graph, params.phi, params.r)
    else:
        authority = Signal.SUCCESS
        b = np.full(n, Signal.SUCCESS, dtype=np.int8)
    state.perceived = b

    bf = b.astype(np.float64)
    xc = state.orientation.astype(np.float64)
    incr = (
        bf[:, None] * state.beta
        + xc[:, None] * state.lam
        + (bf * xc)[:, None] * state.gamma
        + omega
    )
    np.clip(state.dime + incr, 0.0, 100.0, out=state.dime)

    d = state.dime
    state.will_act = d[:, 0] < (d[:, 1] + d[:, 2] + d[:, 3]) / 3.0
    state.will_innovate = d[:, 1] > (d[:, 2] + d[:, 3]) / 2.0

    state.last_active = np.where(state.action != 0, state.action, state.last_active)
    state.orientation = np.where(
        state.will_innovate, -state.last_active, state.last_active
    ).astype(np.int8)
    state.action = np.where(state.will_act, state.orientation, 0).astype(np.int8)

    state.step_index += 1
    return PopulationSnapshot(
        step=state.step_index,
        type_fractions=state.type_counts() / n,
        mean_dime=d.mean(axis=0),
        authority_signal=float(authority),
        success_fraction=float(np.count_nonzero(b == Signal.SUCCESS)) / n,
    )


@dataclass
class RunResult:
    """Per-step series of one run (or the mean across replicates)."""

    params: ModelParams
    seed: int
    type_fractions: np.ndarray  # (T, 6)
    mean_dime: np.ndarray  # (T, 4)
    authority: np.ndarray  # (T,)
    success_fraction: np.ndarray  # (T,)
    steady_state: PopulationSnapshot
    wall_time: float = 0.0
    replicates: list["RunResult"] | None = None

    def snapshot(self, index: int) -> PopulationSnapshot:
        return PopulationSnapshot(
            step=index + 1,
            type_fractions=self.type_fractions[index],
            mean_dime=self.mean_dime[index],
            authority_signal=float(self.authority[index]),
            success_fraction=float(self.success_fraction[index]),
        )

    def steady_fraction(self, agent_type: AgentType) -> float:
        return float(self.steady_state.type_fractions[agent_type])


def _steady_state(
    type_fractions: np.ndarray,
    mean_dime: np.ndarray,
    authority: np.ndarray,
    success_fraction: np.ndarray,
    window: int,
) -> PopulationSnapshot:
    w = min(window, type_fractions.shape[0])
    return PopulationSnapshot(
        step=type_fractions.shape[0],
        type_fractions=type_fractions[-w:].mean(axis=0),
        mean_dime=mean_dime[-w:].mean(axis=0),
        authority_signal=float(authority[-w:].mean()),
        success_fraction=float(success_fraction[-w:].mean()),
    )


def run(
    params: ModelParams,
    graph: SocialGraph | None = None,
    table: DimeDistributionTable | None = None,
    net_params: NetworkParams | None = None,
) -> RunResult:
    """Execute T steps from a fresh generator seeded with ``params.seed``.

    When no graph is supplied one is grown from the run's own stream before
    initialisation, so replicate results are reproducible from the seed
    alone.
    """
    table = table or DimeDistributionTable.default()
    started = time.perf_counter()
    rng = np.random.default_rng(params.seed)
    if graph is None:
        graph = generate_holme_kim(net_params or NetworkParams(n=params.n), rng)
    state = init_run(params, graph, table, rng)
    t = params.t
    type_fractions = np.empty((t, 6))
    mean_dime = np.empty((t, 4))
    authority = np.empty(t)
    success = np.empty(t)
    for k in range(t):
        snap = step(state, params, graph, rng)
        type_fractions[k] = snap.type_fractions
        mean_dime[k] = snap.mean_dime
        authority[k] = snap.authority_signal
        success[k] = snap.success_fraction
    steady = _steady_state(type_fractions, mean_dime, authority, success, params.steady_window)
    return RunResult(
        params=params,
        seed=params.seed,
        type_fractions=type_fractions,
        mean_dime=mean_dime,
        authority=authority,
        success_fraction=success,
        steady_state=steady,
        wall_time=time.perf_counter() - started,
    )


def _run_replicate(args) -> RunResult:
    params, index, table, net_params, shared_edges, shared_n = args
    rep_params = replace(params, seed=params.seed + index)
    graph = None
    if shared_edges is not None:
        graph = SocialGraph(shared_n, shared_edges)
    return run(rep_params, graph=graph, table=table, net_params=net_params)


def run_replicates(
    params: ModelParams,
    replicate_count: int,
    table: DimeDistributionTable | None = None,
    net_params: NetworkParams | None = None,
    shared_graph: SocialGraph | None = None,
    workers: int = 1,
) -> RunResult:
    """Run independent replicates and return their arithmetic mean.

    Replicate k uses seed ``params.seed + k`` and, by default, its own
    freshly grown network; pass ``shared_graph`` to reuse one topology.
    Results are reduced in replicate-index order, so output is identical
    for any worker count.
    """
    if replicate_count < 1:
        raise ValueError("replicate_count must be >= 1")
    table = table or DimeDistributionTable.default()
    shared_edges = shared_graph.edges if shared_graph is not None else None
    shared_n = shared_graph.node_count if shared_graph is not None else 0
    jobs = [
        (params, k, table, net_params, shared_edges, shared_n)
        for k in range(replicate_count)
    ]
    if workers > 1 and replicate_count > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_replicate, jobs))
    else:
        results = [_run_replicate(job) for job in jobs]

    type_fractions = np.mean([r.type_fractions for r in results], axis=0)
    mean_dime = np.mean([r.mean_dime for r in results], axis=0)
    authority = np.mean([r.authority for r in results], axis=0)
    success = np.mean([r.success_fraction for r in results], axis=0)
    steady = _steady_state(type_fractions, mean_dime, authority, success, params.steady_window)
    return RunResult(
        params=params,
        seed=params.seed,
        type_fractions=type_fractions,
        mean_dime=mean_dime,
        authority=authority,
        success_fraction=success,
        steady_state=steady,
        wall_time=sum(r.wall_time for r in results),
        replicates=results,
    )


def rolling_average(series: np.ndarray, window: int = 20) -> np.ndarray:
    """Trailing mean over the previous min(window, t+1) points, per column."""
    if window < 1:
        raise ValueError("window must be >= 1")
    series = np.asarray(series, dtype=float)
    csum = np.cumsum(series, axis=0)
    out = np.empty_like(series, dtype=float)
    t = series.shape[0]
    head = min(window, t)
    counts = np.arange(1, head + 1).reshape((-1,) + (1,) * (series.ndim - 1))
    out[:head] = csum[:head] / counts
    if t > window:
        out[window:] = (csum[window:] - csum[:-window]) / window
    return out


TIMESERIES_COLUMNS = [
    "step",
    "frac_active_conventional",
    "frac_active_innovator",
    "frac_active_radical",
    "frac_latent_conventional",
    "frac_latent_innovator",
    "frac_latent_radical",
    "mean_disidentification",
    "mean_innovation",
    "mean_moralisation",
    "mean_energisation",
    "authority_signal",
    "success_fraction",
]


def atomic_write_text(path, text: str) -> None:
    """Write via a temp name and rename, so failures leave no partial file."""
    path = os.fspath(path)
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _fmt(value: float) -> str:
    return repr(float(value))


def timeseries_csv_text(result: RunResult) -> str:
    lines = [",".join(TIMESERIES_COLUMNS)]
    for k in range(result.type_fractions.shape[0]):
        row = [str(k + 1)]
        row += [_fmt(v) for v in result.type_fractions[k]]
        row += [_fmt(v) for v in result.mean_dime[k]]
        row.append(_fmt(result.authority[k]))
        row.append(_fmt(result.success_fraction[k]))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def write_timeseries_csv(result: RunResult, path) -> None:
    atomic_write_text(path, timeseries_csv_text(result))


def summary_dict(result: RunResult, extra: dict | None = None) -> dict:
    steady = result.steady_state
    summary = {
        "params": result.params.to_dict(),
        "seed": result.seed,
        "replicate_count": len(result.replicates) if result.replicates else 1,
        "steady_state": {
            "type_fractions": {
                t.name.lower(): float(steady.type_fractions[t]) for t in AgentType
            },
            "mean_dime": {
                name: float(v)
                for name, v in zip(("D", "I", "M", "E"), steady.mean_dime)
            },
            "success_fraction": steady.success_fraction,
            "authority_signal_mean": steady.authority_signal,
        },
        "wall_time_seconds": result.wall_time,
    }
    if extra:
        summary.update(extra)
    return summary


def write_summary_json(result: RunResult, path, extra: dict | None = None) -> None:
    atomic_write_text(path, json.dumps(summary_dict(result, extra), indent=2) + "\n")
