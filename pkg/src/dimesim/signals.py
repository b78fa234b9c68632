"""Authority broadcast and the two-stage contestation pipeline.

A failure broadcast can be converted to a perceived success first by
individual cognitive re-framing (easier for strongly identified, low-D
agents) and then by synchronous rounds of collective re-framing over the
social graph, where an agent flips when the fraction of its neighbours
perceiving success strictly exceeds the threshold. Success is absorbing:
no stage ever converts success back to failure.

Signals use the numeric encoding success = -1, failure = +1 in arrays.
"""

from __future__ import annotations

import numpy as np

from .core import Signal
from .network import SocialGraph

__all__ = [
    "authority_signal",
    "individual_reframe",
    "individual_reframe_many",
    "neighbourhood_success_fraction",
    "collective_reframe",
]


def authority_signal(p: float, rng: np.random.Generator) -> Signal:
    """Broadcast failure with probability ``p``; consumes one uniform draw."""
    if not (0.0 <= p <= 1.0):
        raise ValueError("failure probability p must lie in [0, 1]")
    return Signal.FAILURE if rng.random() < p else Signal.SUCCESS


def individual_reframe(authority: Signal, d: float, threshold: float, z: float) -> Signal:
    """One agent's cognitive contestation of the broadcast.

    A failure broadcast is re-framed to success when (100 - D) * z / 100
    strictly exceeds the threshold; a success broadcast passes through.
    """
    if authority == Signal.SUCCESS or (100.0 - d) * z / 100.0 > threshold:
        return Signal.SUCCESS
    return Signal.FAILURE


def individual_reframe_many(
    authority: Signal,
    d: np.ndarray,
    threshold: float,
    z: np.ndarray,
) -> np.ndarray:
    """Vectorised :func:`individual_reframe`; returns an int8 signal vector."""
    if authority == Signal.SUCCESS:
        return np.full(d.shape[0], Signal.SUCCESS, dtype=np.int8)
    reframed = (100.0 - d) * z / 100.0 > threshold
    return np.where(reframed, np.int8(Signal.SUCCESS), np.int8(Signal.FAILURE))


def neighbourhood_success_fraction(
    agent: int,
    round_values: np.ndarray,
    graph: SocialGraph,
) -> float:
    """Fraction of the agent's neighbours currently perceiving success.

    Computed as (1 / (2 deg)) * sum over neighbours of (1 - Q); an agent
    with no neighbours scores 0 (and therefore never flips collectively).
    """
    neigh = graph.neighbors(agent)
    if neigh.shape[0] == 0:
        return 0.0
    q = np.asarray(round_values)[neigh]
    return float(np.sum(1 - q)) / (2.0 * neigh.shape[0])


def collective_reframe(
    after_individual: np.ndarray,
    graph: SocialGraph,
    phi: float,
    rounds: int,
) -> np.ndarray:
    """Run ``rounds`` synchronous rounds of social re-framing.

    Every round is double-buffered: all round-(j+1) values are computed from
    the full round-j vector. An agent at failure flips to success iff its
    neighbourhood success fraction strictly exceeds ``phi``. A flip-free
    round is a fixed point, so iteration stops early with identical results.
    """
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    q = np.asarray(after_individual, dtype=np.int8).copy()
    n = graph.node_count
    if q.shape != (n,):
        raise ValueError("signal vector length must equal node count")
    adj = graph.adjacency
    degrees = graph.degrees
    safe_deg = np.maximum(degrees, 1)
    for _ in range(rounds):
        success = (q == Signal.SUCCESS).astype(np.float64)
        fraction = (adj @ success) / safe_deg
        fraction[degrees == 0] = 0.0
        flips = (q == Signal.FAILURE) & (fraction > phi)
        if not flips.any():
            break
        q[flips] = Signal.SUCCESS
    return q
