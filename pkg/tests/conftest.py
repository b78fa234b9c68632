import numpy as np
import pytest

from dimesim import ModelParams, NetworkParams, SocialGraph, generate_holme_kim


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def path_graph():
    """Four nodes in a line: 0-1-2-3."""
    return SocialGraph(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def small_params():
    """Cheap parameters for fast end-to-end engine tests."""
    return ModelParams(n=30, t=50, seed=7)


@pytest.fixture
def small_graph():
    return generate_holme_kim(NetworkParams(n=30, m=3, m_t=2.0, n0=5),
                              np.random.default_rng(0))
