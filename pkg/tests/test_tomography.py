import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tomolab import (
    DEFAULT_GRID,
    DegenerateFrameError,
    ModeGrid,
    MultimodeProductState,
    OpticalTomogramTable,
    SymplecticFrame,
    UnsupportedSourceError,
    WrongArityError,
    gaussian_vacuum,
    gaussian_wavefunction,
    make_fock_superposition,
    multimode_tomogram,
    optical_tomogram,
    pure_density_matrix,
    reconstruct_density,
    sample_wavefunction,
    squeezed_vacuum,
    symplectic_tomogram,
    vacuum,
)
from tomolab.tomography import RECONSTRUCTION_GRID

from conftest import WIDE_GRID, random_fock

X = DEFAULT_GRID.points


@pytest.mark.parametrize("theta", [0.0, 0.9, 2.5, 5.0])
def test_vacuum_and_one_photon_tomograms(vac, one, theta):
    w0 = optical_tomogram(vac, theta).weights
    assert np.max(np.abs(w0 - np.exp(-X * X) / math.sqrt(math.pi))) < 1e-8
    w1 = optical_tomogram(one, theta).weights
    assert np.max(np.abs(w1 - 2 / math.sqrt(math.pi) * X * X * np.exp(-X * X))) < 1e-8


def test_optical_normalized_for_all_state_kinds(plus, sq1):
    states = [plus, sample_wavefunction(plus), gaussian_vacuum(),
              pure_density_matrix(sample_wavefunction(plus, ModeGrid(-8, 8, 256)))]
    for s in states:
        w = optical_tomogram(s, 0.77, DEFAULT_GRID if not hasattr(s, "grid") else s.grid)
        assert w.integral() == pytest.approx(1.0, abs=1e-8)
        assert w.weights.min() >= 0.0


def test_density_matrix_tomogram_matches_wavefunction(plus):
    g = ModeGrid(-8, 8, 256)
    psi = sample_wavefunction(plus, g)
    a = optical_tomogram(pure_density_matrix(psi), 1.1, g).weights
    b = optical_tomogram(psi, 1.1, g).weights
    assert np.max(np.abs(a - b)) < 1e-10


def test_multimode_gaussian_rejected_by_optical(tmsv):
    with pytest.raises(WrongArityError):
        optical_tomogram(tmsv, 0.0)


@pytest.mark.parametrize("theta", [0.0, 0.3, 1.2, 2.9, 4.0])
def test_unit_frame_equals_optical(plus, theta):
    frame = SymplecticFrame(math.cos(theta), math.sin(theta))
    a = symplectic_tomogram(plus, frame, DEFAULT_GRID).weights
    b = optical_tomogram(plus, theta).weights
    assert np.max(np.abs(a - b)) < 1e-10
    psi = sample_wavefunction(plus)
    a = symplectic_tomogram(psi, frame, DEFAULT_GRID).weights
    b = optical_tomogram(psi, theta).weights
    assert np.max(np.abs(a - b)) < 1e-10


def test_stretched_vacuum_frame(vac):
    w = symplectic_tomogram(vac, SymplecticFrame(2, 0), DEFAULT_GRID).weights
    assert np.max(np.abs(w - 0.5 * np.exp(-X * X / 4) / math.sqrt(math.pi))) < 1e-6
    psi = sample_wavefunction(vac)
    w = symplectic_tomogram(psi, SymplecticFrame(2, 0), DEFAULT_GRID).weights
    assert np.max(np.abs(w - 0.5 * np.exp(-X * X / 4) / math.sqrt(math.pi))) < 1e-6


def test_degenerate_frame(vac):
    with pytest.raises(DegenerateFrameError):
        symplectic_tomogram(vac, SymplecticFrame(0, 0))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000), st.floats(0.5, 3.0), st.floats(0.3, 2.0), st.floats(-math.pi, math.pi))
def test_homogeneity(seed, lam, r, theta):
    state = random_fock(np.random.default_rng(seed), 5)
    frame = SymplecticFrame.polar(r, theta)
    base = symplectic_tomogram(state, frame)
    scaled = symplectic_tomogram(state, frame.scaled(lam), base.grid.scaled(lam))
    assert np.max(np.abs(scaled.weights - base.weights / lam)) < 1e-6


def test_homogeneity_on_grid_wavefunction(plus):
    psi = sample_wavefunction(plus)
    frame = SymplecticFrame.polar(1.3, 0.4)
    base = symplectic_tomogram(psi, frame)
    scaled = symplectic_tomogram(psi, frame.scaled(2.0), base.grid.scaled(2.0))
    assert np.max(np.abs(scaled.weights - base.weights / 2.0)) < 1e-6


@pytest.mark.parametrize("theta", [0.0, 0.5, 1.9, 3.6])
def test_gaussian_grid_path_matches_oracle(theta):
    s = squeezed_vacuum(0.6)
    psi = gaussian_wavefunction(s, WIDE_GRID)
    a = optical_tomogram(psi, theta, WIDE_GRID).weights
    b = optical_tomogram(s, theta, WIDE_GRID).weights
    assert np.max(np.abs(a - b)) < 1e-6


def test_two_vacuum_product(vac):
    t = multimode_tomogram(MultimodeProductState((vac, vac)), [SymplecticFrame(1, 0)] * 2)
    x = t.density.grids[0].points
    ref = np.exp(-x[:, None] ** 2 - x[None, :] ** 2) / math.pi
    assert np.max(np.abs(t.density.weights - ref)) < 1e-6
    assert t.density.integral() == pytest.approx(1.0, abs=1e-5)


def test_product_factorizes(vac, one):
    frames = [SymplecticFrame(1, 0), SymplecticFrame.polar(1.5, 0.3)]
    t = multimode_tomogram(MultimodeProductState((one, vac)), frames)
    w1 = symplectic_tomogram(one, frames[0], t.density.grids[0]).weights
    w2 = symplectic_tomogram(vac, frames[1], t.density.grids[1]).weights
    assert np.max(np.abs(t.density.weights - np.outer(w1, w2))) < 1e-14


def test_tmsv_tomogram_covariance(tmsv):
    t = multimode_tomogram(tmsv, [SymplecticFrame(1, 0)] * 2)
    x1, x2 = [g.points for g in t.density.grids]
    W = t.density.quadrature_weights * t.density.weights
    c12 = np.sum(W * np.outer(x1, x2))
    c11 = np.sum(W * (x1 ** 2)[:, None])
    assert c12 == pytest.approx(0.5 * math.sinh(2), abs=1e-4)
    assert c11 == pytest.approx(0.5 * math.cosh(2), abs=1e-4)


def test_multimode_arity(vac, tmsv):
    with pytest.raises(WrongArityError):
        multimode_tomogram(tmsv, [SymplecticFrame(1, 0)])
    with pytest.raises(WrongArityError):
        multimode_tomogram(MultimodeProductState((vac, vac)), [SymplecticFrame(1, 0)] * 3)


def _fidelity(state, rho):
    return rho.expectation(sample_wavefunction(state, RECONSTRUCTION_GRID))


def test_reconstruct_vacuum(vac):
    rho = reconstruct_density(vac)
    x = RECONSTRUCTION_GRID.points
    assert rho.elements[32, 32].real == pytest.approx(0.564190, abs=2e-2)
    ref = np.exp(-(x[:, None] ** 2 + x[None, :] ** 2) / 2) / math.sqrt(math.pi)
    assert np.max(np.abs(rho.elements - ref)) < 1e-6
    assert _fidelity(vac, rho) >= 0.99


@pytest.mark.parametrize("coeffs", [[0, 1], [1, 1], [1, 1j], [1, 0.4, -0.5j]])
def test_reconstruct_round_trip(coeffs):
    state = make_fock_superposition(coeffs)
    rho = reconstruct_density(state)
    assert _fidelity(state, rho) >= 0.99
    assert np.max(np.abs(rho.elements - rho.elements.conj().T)) <= 1e-8
    assert RECONSTRUCTION_GRID.integrate(rho.diagonal) == pytest.approx(1.0, abs=1e-12)


def test_reconstruct_from_gaussian_and_wavefunction(plus):
    s = squeezed_vacuum(0.4)
    rho = reconstruct_density(s)
    assert rho.expectation(gaussian_wavefunction(s, RECONSTRUCTION_GRID)) >= 0.99
    rho = reconstruct_density(sample_wavefunction(plus))
    assert _fidelity(plus, rho) >= 0.99


def test_reconstruct_from_tomogram_table(plus):
    thetas = np.linspace(0, math.pi, 180, endpoint=False)
    w = np.array([optical_tomogram(plus, t).weights for t in thetas])
    table = OpticalTomogramTable(DEFAULT_GRID, thetas, w)
    # table interpolation reproduces tabulated rows and the reflection rule
    assert np.allclose(table.optical([thetas[7]])[0], w[7])
    assert np.allclose(table.optical([thetas[7] + math.pi])[0], w[7][::-1])
    rho = reconstruct_density(table)
    assert _fidelity(plus, rho) >= 0.99


def test_reconstruct_unsupported():
    with pytest.raises(UnsupportedSourceError):
        reconstruct_density(object())
    wide = sample_wavefunction(vacuum(), ModeGrid(-30, 30, 1024))
    shifted = type(wide).normalized(wide.grid, np.exp(-(wide.grid.points - 20) ** 2 / 2))
    with pytest.raises(UnsupportedSourceError):
        reconstruct_density(shifted)
