import numpy as np
import pytest

from frach.grid import GridFunction


@pytest.fixture
def rng():
    return np.random.default_rng(42)


def random_gridfunction(rng, origin, h, n, lo=-1.0, hi=1.0) -> GridFunction:
    return GridFunction(origin, h, rng.uniform(lo, hi, n))


def rel_scale(*arrays) -> float:
    """Normalization for residual checks: at least one, else the data size."""
    peak = 1.0
    for arr in arrays:
        arr = np.asarray(arr, dtype=float)
        if arr.size:
            peak = max(peak, float(np.max(np.abs(arr))))
    return peak
