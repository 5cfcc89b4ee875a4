import random

import pytest


@pytest.fixture
def rng():
    """Deterministic RNG so fuzz tests are reproducible."""
    return random.Random(0x5EED)
