import os
import tempfile

import pytest
from hypothesis import settings
from sympy.polys.domains import QQ

from svsegre.loader import parse_input
from svsegre.poly import make_ring
from svsegre.rng import RandomSource

settings.register_profile('svsegre', max_examples=30, deadline=None)
settings.register_profile('thorough', max_examples=200, deadline=None)
settings.load_profile(os.getenv('HYPOTHESIS_PROFILE', 'svsegre'))


@pytest.fixture
def fixtures_dir():
    """Provide the fixtures directory path."""
    return os.path.join(os.path.dirname(__file__), 'fixtures')


@pytest.fixture
def temp_output_dir():
    """Provide a temporary directory for test outputs."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield tmpdir


@pytest.fixture
def rng():
    """A fixed random stream."""
    return RandomSource(1)


@pytest.fixture
def p2():
    """Coordinate ring of P^2 over the default prime field."""
    return make_ring(['x', 'y', 'z'])


@pytest.fixture
def p3():
    """Coordinate ring of P^3 over the default prime field."""
    return make_ring(['x', 'y', 'z', 'w'])


@pytest.fixture
def plane():
    """Affine plane over the default prime field."""
    return make_ring(['x', 'y'])


@pytest.fixture
def plane_q():
    """Affine plane over the rationals."""
    return make_ring(['x', 'y'], QQ)


@pytest.fixture
def load_ideal(fixtures_dir):
    """Load the ideal of a fixture file by name."""
    def load(name, field=None):
        _, ideal, _ = parse_input(os.path.join(fixtures_dir, name), field)
        return ideal
    return load
