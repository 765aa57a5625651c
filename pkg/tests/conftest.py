import numpy as np
import pytest

from preoperad.backends import EndoBackend
from preoperad.calculus import PreOperadContext
from preoperad.rings import CoefficientRing


@pytest.fixture
def ring97():
    return CoefficientRing.prime_field(97)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def ctx2(ring97, rng):
    # dim-2 endo context with a random product, fixed seed
    backend = EndoBackend(ring97, 2)
    return PreOperadContext(backend, backend.random(2, rng))
