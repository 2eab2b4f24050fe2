import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from torusiso import TorusProductSpec

from refvalues import SQRT_PI_RADIUS


@pytest.fixture
def example_spec():
    """The square torus of area 4*pi crossed with R^2."""
    return TorusProductSpec((SQRT_PI_RADIUS, SQRT_PI_RADIUS), 2)


@pytest.fixture
def unit_spec():
    """The unit-radius square torus crossed with R^2."""
    return TorusProductSpec((1.0, 1.0), 2)


@pytest.fixture
def unit_spec3():
    """The unit-radius cubic torus crossed with R^2."""
    return TorusProductSpec((1.0, 1.0, 1.0), 2)
