import numpy as np
import pytest

from breather_bench import BreatherParams, make_grid


@pytest.fixture(scope="session")
def grid():
    """Default working grid for most checks."""
    return make_grid(30.0, 2048)


@pytest.fixture(scope="session")
def grid_1024():
    return make_grid(30.0, 1024)


@pytest.fixture(scope="session")
def standard_pairs():
    return [
        BreatherParams(1.0, 1.0),
        BreatherParams(1.0, 2.0),
        BreatherParams(2.0, 1.0),
        BreatherParams(0.7, 1.3),
    ]


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
