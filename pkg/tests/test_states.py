import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tomolab import (
    DEFAULT_GRID,
    DensityMatrix,
    GridWavefunction,
    InvalidInputError,
    InvalidStateError,
    ModeGrid,
    MultimodeProductState,
    NonphysicalStateError,
    fock_state,
    gaussian_wavefunction,
    make_fock_superposition,
    make_gaussian_state,
    pure_density_matrix,
    sample_wavefunction,
    squeezed_vacuum,
    von_neumann_entropy,
)


def test_fock_normalization_examples():
    assert make_fock_superposition([1]).coefficients.tolist() == [1]
    assert make_fock_superposition([0, 1]).coefficients.tolist() == [0, 1]
    c = make_fock_superposition([3, 4j]).coefficients
    assert c[0] == pytest.approx(0.6) and c[1] == pytest.approx(0.8j)


def test_fock_rejects_zero_and_overlong():
    with pytest.raises(InvalidStateError):
        make_fock_superposition([0, 0])
    with pytest.raises(InvalidStateError):
        make_fock_superposition(np.ones(66))


def test_grid_invariants():
    g = DEFAULT_GRID
    assert g.spacing == pytest.approx(16 / 1023)
    assert g.integrate(np.ones(g.n_points)) == pytest.approx(16.0)
    for bad in [(1, 0, 32), (-1, 1, 8), (-1, 1, 20.5)]:
        with pytest.raises(InvalidInputError):
            ModeGrid(*bad)


def test_gaussian_examples():
    make_gaussian_state([0, 0], np.diag([0.5, 0.5]))
    s = make_gaussian_state([0, 0], np.diag([math.e ** 2 / 2, math.e ** -2 / 2]))
    assert np.linalg.det(s.covariance) == pytest.approx(0.25)
    assert s.is_pure
    with pytest.raises(NonphysicalStateError, match="nonphysical-state"):
        make_gaussian_state([0, 0], np.diag([0.1, 0.1]))
    with pytest.raises(InvalidInputError):
        make_gaussian_state([0, 0], [[0.5, 0.1], [0.0, 0.5]])
    with pytest.raises(InvalidInputError):
        make_gaussian_state([0, 0, 0], np.eye(3))


def test_sample_wavefunction_examples(vac, one):
    psi = sample_wavefunction(vac)
    i0 = np.argmin(np.abs(DEFAULT_GRID.points))
    assert psi.samples[i0].real == pytest.approx(math.pi ** -0.25, abs=1e-4)
    assert DEFAULT_GRID.integrate(psi.probability) == pytest.approx(1.0, abs=1e-10)
    odd = sample_wavefunction(one, ModeGrid(-8, 8, 1025))
    assert abs(odd.samples[512]) < 1e-15


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.floats(-1, 1), st.floats(-1, 1)), min_size=1, max_size=21)
       .filter(lambda c: sum(a * a + b * b for a, b in c) > 1e-6))
def test_sampled_norm_is_one(coeffs):
    state = make_fock_superposition([complex(a, b) for a, b in coeffs])
    psi = sample_wavefunction(state)
    assert DEFAULT_GRID.integrate(psi.probability) == pytest.approx(1.0, abs=1e-10)


def test_pure_density_matrix(vac, plus):
    rho = pure_density_matrix(sample_wavefunction(vac, ModeGrid(-8, 8, 257)))
    assert rho.elements[128, 128].real == pytest.approx(math.pi ** -0.5, abs=1e-12)
    for state in (vac, plus):
        rho = pure_density_matrix(sample_wavefunction(state, ModeGrid(-8, 8, 257)))
        lam = np.sort(rho.spectrum())
        assert rho.grid.integrate(rho.diagonal) == pytest.approx(1.0, abs=1e-8)
        assert lam[-2] <= 1e-8
        assert von_neumann_entropy(rho) <= 1e-6


def test_density_matrix_rejects_nonhermitian():
    g = ModeGrid(-4, 4, 16)
    m = np.eye(16) / g.integrate(np.ones(16))
    m[0, 1] = 0.3
    with pytest.raises(InvalidInputError):
        DensityMatrix(g, m)


def test_gaussian_wavefunction_matches_covariance():
    s = make_gaussian_state([0.3, -0.2], [[0.8, 0.2], [0.2, (0.25 + 0.04) / 0.8]])
    psi = gaussian_wavefunction(s)
    x = DEFAULT_GRID.points
    mean = DEFAULT_GRID.integrate(x * psi.probability)
    var = DEFAULT_GRID.integrate((x - mean) ** 2 * psi.probability)
    assert mean == pytest.approx(0.3, abs=1e-10)
    assert var == pytest.approx(0.8, abs=1e-10)


def test_states_are_immutable(vac):
    psi = sample_wavefunction(vac)
    with pytest.raises(ValueError):
        psi.samples[0] = 1.0
    with pytest.raises(AttributeError):
        psi.grid = None


def test_product_state_caps():
    with pytest.raises(InvalidStateError):
        MultimodeProductState(tuple(fock_state(0) for _ in range(4)))
    with pytest.raises(InvalidStateError):
        MultimodeProductState((squeezed_vacuum(0.1),))
    with pytest.raises(InvalidStateError):
        GridWavefunction(DEFAULT_GRID, np.zeros(1024))
