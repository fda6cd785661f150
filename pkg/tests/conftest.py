import os

import numpy as np
import pytest

from cnmf.core.forms import reconstruct


def pytest_collection_modifyitems(config, items):
    if os.getenv("CNMF_RUN_SLOW") == "1":
        return
    skip_slow = pytest.mark.skip(reason="desk-scale experiment; set CNMF_RUN_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng():
    return np.random.default_rng(42)


def random_factors(rng, N, T, K, L):
    return rng.random((L, N, K)), rng.random((K, T))


def noisy_instance(rng, N, T, K, L, noise=0.1):
    """X from random factors plus clipped Gaussian noise."""
    W, H = random_factors(rng, N, T, K, L)
    X = np.maximum(reconstruct(W, H) + noise * rng.standard_normal((N, T)), 0.0)
    return X, W, H


@pytest.fixture
def small_instance(rng):
    return noisy_instance(rng, N=6, T=20, K=2, L=3)
