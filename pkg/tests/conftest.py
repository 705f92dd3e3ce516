import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def awgn(shape, sigma2, rng):
    """Circularly symmetric complex noise with variance sigma2."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) * np.sqrt(sigma2 / 2.0)
