import math

import numpy as np
import pytest

from tomolab import (
    ModeGrid,
    fock_state,
    make_fock_superposition,
    squeezed_vacuum,
    two_mode_squeezed_vacuum,
    vacuum,
)

LN_PI_E = math.log(math.pi * math.e)
HALF_LN_PI_E = 0.5 * LN_PI_E
# -ln(2/sqrt(pi)) - digamma(3/2) + 3/2, cross-checked by 1e5-node quadrature
ONE_PHOTON_ENTROPY = 1.3427277883861783
WIDE_GRID = ModeGrid(-12.0, 12.0, 1536)


@pytest.fixture
def vac():
    return vacuum()


@pytest.fixture
def one():
    return fock_state(1)


@pytest.fixture
def plus():
    return make_fock_superposition([1, 1])


@pytest.fixture
def test_states():
    return {"vacuum": vacuum(), "one": fock_state(1), "plus": make_fock_superposition([1, 1])}


@pytest.fixture
def sq1():
    return squeezed_vacuum(1.0)


@pytest.fixture
def tmsv():
    return two_mode_squeezed_vacuum(1.0)


def random_fock(rng, nmax):
    c = rng.normal(size=nmax + 1) + 1j * rng.normal(size=nmax + 1)
    return make_fock_superposition(c)


@pytest.fixture
def rng():
    return np.random.default_rng(20061019)
