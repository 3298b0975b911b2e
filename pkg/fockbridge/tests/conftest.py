import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from fockbridge.schemas.lattice import LatticeSpec, Statistics

settings.register_profile(
    "fockbridge",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
    print_blob=True,
)
settings.load_profile("fockbridge")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def bose_spec():
    return LatticeSpec(mode_count=5, n_max=4)


@pytest.fixture
def fermi_spec():
    return LatticeSpec(mode_count=5, n_max=5, statistics=Statistics.FERMI)
