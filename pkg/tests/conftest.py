import numpy as np
import pytest

from arswarm.datasets import generate_ar2, load_ar2_fixture
from arswarm.series import ARModel, simulate_ar


@pytest.fixture(scope="session")
def ar2_fixture():
    return load_ar2_fixture()


@pytest.fixture
def ar2_series():
    def make(seed, n=4096):
        return generate_ar2(seed=seed, n=n)
    return make


@pytest.fixture(scope="session")
def white_noise():
    return simulate_ar(ARModel(0), 20000, noise_std=1.0, seed=99, warmup=0)
