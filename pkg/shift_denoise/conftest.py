import numpy as np
import pytest

from shift_denoise.signal_core.sequences import Signal


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def random_signal(rng):
    """Factory for complex Gaussian signals: ``random_signal(start, length)``."""

    def make(start: int, length: int) -> Signal:
        values = rng.standard_normal(length) + 1j * rng.standard_normal(length)
        return Signal(start, values)

    return make
