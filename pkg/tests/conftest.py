import numpy as np
import pytest

from signet.model import NetworkShape, init_params


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_instance(rng, d_max=5, q_max=8, m_max=12, theta_scale=2.0):
    """A random small network plus dataset for oracle comparisons."""
    d = int(rng.integers(1, d_max + 1))
    q = int(rng.integers(1, q_max + 1))
    m = int(rng.integers(1, m_max + 1))
    shape = NetworkShape(d=d, q=q)
    theta = rng.uniform(-theta_scale, theta_scale, size=shape.n)
    X = rng.uniform(-1.0, 1.0, size=(m, d))
    y = rng.uniform(-1.0, 1.0, size=m)
    labels = rng.choice([-1.0, 1.0], size=m)
    return shape, theta, X, y, labels
