import numpy as np
import pytest

from holoctf.fields import Grid2D
from holoctf.phantom import disk_phantom, rect_phantom


@pytest.fixture
def rng():
    return np.random.default_rng(20241018)


@pytest.fixture
def small_grid():
    return Grid2D(32, 2.0)


@pytest.fixture
def phi_disk():
    return disk_phantom(radius=0.3, phi=1.0)


@pytest.fixture
def phi_rect():
    return rect_phantom(half_size=0.25, phi=1.0)
