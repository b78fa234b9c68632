"""Per-agent psychological state, the DIME regression update, and decision rules.

Each agent carries four psychological scalars on a 0-100 scale
(disidentification, innovation, moralisation, energisation), a perceived
success/failure signal, a tactical orientation, and an action. The update
cycle is: regress the four scalars on the perceived outcome and the prior
orientation, decide whether to act and whether to switch tactic, then
derive the new orientation and action from the last active action.

The functions here are scalar, one agent at a time; the engine module holds
the vectorised equivalents used in the hot loop and is tested against these.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import IntEnum

import numpy as np

__all__ = [
    "Signal",
    "Orientation",
    "Action",
    "AgentType",
    "AgentState",
    "DimeCoefficients",
    "DimeDistributionTable",
    "DIME_NAMES",
    "saturate",
    "update_dime",
    "decide",
    "update_action",
    "classify",
]

DIME_NAMES = ("disidentification", "innovation", "moralisation", "energisation")


class Signal(IntEnum):
    """Broadcast/perceived outcome. Numeric values are used in arithmetic."""

    SUCCESS = -1
    FAILURE = 1


class Orientation(IntEnum):
    RADICAL = -1
    CONVENTIONAL = 1


class Action(IntEnum):
    RADICAL = -1
    INACTIVE = 0
    CONVENTIONAL = 1


class AgentType(IntEnum):
    """The six-way typology from (acting, innovating, last active action).

    Enum order is the documented tie-break order for dominant-type argmax.
    """

    ACTIVE_CONVENTIONAL = 0
    ACTIVE_INNOVATOR = 1
    ACTIVE_RADICAL = 2
    LATENT_CONVENTIONAL = 3
    LATENT_INNOVATOR = 4
    LATENT_RADICAL = 5

    @property
    def abbreviation(self) -> str:
        return _TYPE_ABBREVIATIONS[self]


_TYPE_ABBREVIATIONS = {
    AgentType.ACTIVE_CONVENTIONAL: "AcCo",
    AgentType.ACTIVE_INNOVATOR: "AcIn",
    AgentType.ACTIVE_RADICAL: "AcRa",
    AgentType.LATENT_CONVENTIONAL: "LaCo",
    AgentType.LATENT_INNOVATOR: "LaIn",
    AgentType.LATENT_RADICAL: "LaRa",
}


def saturate(value: float) -> float:
    """Clamp a DIME scalar into [0, 100]."""
    if value < 0.0:
        return 0.0
    if value > 100.0:
        return 100.0
    return value


@dataclass(frozen=True)
class AgentState:
    """One agent's full state.

    ``action != INACTIVE`` implies ``action == orientation``; the engine and
    :func:`update_action` maintain this. ``last_active_action`` is the most
    recent non-inactive action, conventional if the agent has never acted.
    """

    disidentification: float
    innovation: float
    moralisation: float
    energisation: float
    perceived_signal: Signal = Signal.SUCCESS
    orientation: Orientation = Orientation.CONVENTIONAL
    action: Action = Action.CONVENTIONAL
    last_active_action: Orientation = Orientation.CONVENTIONAL
    will_act: bool = True
    will_innovate: bool = False

    @property
    def dime(self) -> tuple[float, float, float, float]:
        return (
            self.disidentification,
            self.innovation,
            self.moralisation,
            self.energisation,
        )


@dataclass(frozen=True)
class DimeCoefficients:
    """Regression gradients for the four DIME dimensions (order D, I, M, E).

    ``beta`` multiplies the perceived outcome, ``lam`` the orientation, and
    ``gamma`` their product. Values may be negative; no range restriction.
    """

    beta: np.ndarray
    lam: np.ndarray
    gamma: np.ndarray

    def __post_init__(self):
        for name in ("beta", "lam", "gamma"):
            vec = np.asarray(getattr(self, name), dtype=float)
            if vec.shape != (4,) or not np.all(np.isfinite(vec)):
                raise ValueError(f"{name} must be a finite 4-vector")
            object.__setattr__(self, name, vec)


@dataclass(frozen=True)
class DimeDistributionTable:
    """Normal-distribution parameters for initial DIME values and gradients.

    All arrays are ordered (D, I, M, E). Defaults are the empirically
    estimated values used throughout; override any entry for sensitivity
    studies.
    """

    initial_mean: np.ndarray
    initial_sd: np.ndarray
    beta_mean: np.ndarray
    beta_sd: np.ndarray
    lambda_mean: np.ndarray
    lambda_sd: np.ndarray
    gamma_mean: np.ndarray
    gamma_sd: np.ndarray

    def __post_init__(self):
        for name in (
            "initial_mean",
            "initial_sd",
            "beta_mean",
            "beta_sd",
            "lambda_mean",
            "lambda_sd",
            "gamma_mean",
            "gamma_sd",
        ):
            vec = np.asarray(getattr(self, name), dtype=float)
            if vec.shape != (4,) or not np.all(np.isfinite(vec)):
                raise ValueError(f"{name} must be a finite 4-vector")
            if name.endswith("_sd") and np.any(vec < 0):
                raise ValueError(f"{name} must be non-negative")
            object.__setattr__(self, name, vec)

    @classmethod
    def default(cls) -> "DimeDistributionTable":
        return cls(
            initial_mean=np.array([25.0, 16.67, 58.33, 66.67]),
            initial_sd=np.array([20.0, 30.0, 21.67, 15.0]),
            beta_mean=np.array([2.33, 0.0, 1.33, 3.33]),
            beta_sd=np.array([1.0, 0.67, 1.0, 0.67]),
            lambda_mean=np.array([-7.33, 0.33, -0.33, 1.67]),
            lambda_sd=np.array([1.0, 0.67, 1.0, 0.67]),
            gamma_mean=np.array([-0.67, 1.67, 0.33, 1.67]),
            gamma_sd=np.array([1.0, 0.67, 1.0, 0.67]),
        )

    def mean_coefficients(self) -> DimeCoefficients:
        return DimeCoefficients(
            beta=self.beta_mean.copy(),
            lam=self.lambda_mean.copy(),
            gamma=self.gamma_mean.copy(),
        )


def update_dime(
    state: AgentState,
    coeffs: DimeCoefficients,
    perceived: Signal,
    noise: np.ndarray,
) -> AgentState:
    """Apply the four regression updates and saturate into [0, 100].

    Uses the orientation held *before* this step's decision phase. Each
    scalar X becomes clamp(X + beta_X*B + lam_X*xc + gamma_X*B*xc + noise_X).
    """
    noise = np.asarray(noise, dtype=float)
    b = float(perceived)
    xc = float(state.orientation)
    new = [
        saturate(
            x + coeffs.beta[k] * b + coeffs.lam[k] * xc + coeffs.gamma[k] * b * xc + noise[k]
        )
        for k, x in enumerate(state.dime)
    ]
    return replace(
        state,
        disidentification=new[0],
        innovation=new[1],
        moralisation=new[2],
        energisation=new[3],
        perceived_signal=perceived,
    )


def decide(state: AgentState) -> tuple[bool, bool]:
    """Return (will_act, will_innovate) from the current DIME scalars.

    An agent acts only when disidentification is strictly below the mean of
    the other three scalars, so a tie leaves the agent latent. Ties occur
    routinely because saturation pins scalars at exactly zero, and the
    tie-goes-latent convention is what sustains a latent-conventional
    population in success-dominated regimes. Innovation is the opposite
    way around: the agent innovates only when innovation strictly exceeds
    the mean of moralisation and energisation, so a tie keeps the current
    tactic.
    """
    d, i, m, e = state.dime
    will_act = d < (i + m + e) / 3.0
    will_innovate = i > (m + e) / 2.0
    return will_act, will_innovate


def update_action(state: AgentState, will_act: bool, will_innovate: bool) -> AgentState:
    """Advance last-active-action, orientation, and action, in that order.

    The previous step's action feeds the last-active-action update before
    the orientation is recomputed; reordering these changes trajectories.
    """
    last_active = (
        Orientation(int(state.action)) if state.action != Action.INACTIVE
        else state.last_active_action
    )
    orientation = Orientation(-int(last_active)) if will_innovate else last_active
    action = Action(int(orientation)) if will_act else Action.INACTIVE
    return replace(
        state,
        last_active_action=last_active,
        orientation=orientation,
        action=action,
        will_act=will_act,
        will_innovate=will_innovate,
    )


def classify(state: AgentState) -> AgentType:
    """Map (will_act, will_innovate, last_active_action) to the six types."""
    if state.will_innovate:
        return AgentType.ACTIVE_INNOVATOR if state.will_act else AgentType.LATENT_INNOVATOR
    conventional = state.last_active_action == Orientation.CONVENTIONAL
    if state.will_act:
        return AgentType.ACTIVE_CONVENTIONAL if conventional else AgentType.ACTIVE_RADICAL
    return AgentType.LATENT_CONVENTIONAL if conventional else AgentType.LATENT_RADICAL
