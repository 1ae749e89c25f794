import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_unimodular(rng, shape):
    """Random constant-modulus dual-polarization weights."""
    from asibeam import DualPolWeights

    return DualPolWeights(np.exp(2j * np.pi * rng.random(shape)), np.exp(2j * np.pi * rng.random(shape)))
