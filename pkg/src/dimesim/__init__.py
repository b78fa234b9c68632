"""Discrete-time agent-based simulator of protest dynamics: authority
success/failure signalling, individual and collective re-framing over a
social network, per-agent psychological state evolution, and emergent
population composition, plus a parameter-sweep engine and metrics pipeline.
"""

from .core import (
    Action,
    AgentState,
    AgentType,
    DimeCoefficients,
    DimeDistributionTable,
    Orientation,
    Signal,
    classify,
    decide,
    saturate,
    update_action,
    update_dime,
)
from .engine import (
    CoeffMode,
    InitialCondition,
    ModelParams,
    NoiseMode,
    PopulationSnapshot,
    RunResult,
    init_run,
    rolling_average,
    run,
    run_replicates,
    step,
)
from .experiments import (
    PRESETS,
    SweepCell,
    SweepSpec,
    dominant_type,
    initial_condition_battery,
    run_sweep,
)
from .network import (
    GraphStats,
    NetworkParams,
    SocialGraph,
    generate_erdos_renyi,
    generate_holme_kim,
    graph_stats,
)
from .signals import (
    authority_signal,
    collective_reframe,
    individual_reframe,
    neighbourhood_success_fraction,
)

__version__ = "0.1.0"
