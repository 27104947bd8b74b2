import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(987654321)


def rel_err(a, b, floor: float = 1.0) -> float:
    """|a - b| relative to the larger magnitude (or floor for tiny values)."""
    return abs(a - b) / max(abs(a), abs(b), floor)
