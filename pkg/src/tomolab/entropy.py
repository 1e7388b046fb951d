"""Entropy functionals in nats: Shannon and Renyi entropies of sampled
densities, position/momentum entropies, von Neumann entropy and the
radial offset S(r cos t, r sin t) - ln r of symplectic tomograms."""

from __future__ import annotations

import math

import numpy as np

from . import _accel
from .errors import (
    DegenerateFrameError,
    InvalidInputError,
    InvalidParameterError,
    NonphysicalMatrixError,
)
from .gaussian import ProjectedGaussian, gaussian_shannon_entropy
from .states import (
    DEFAULT_GRID,
    DensityMatrix,
    FockSuperposition,
    GaussianStateSpec,
    GridWavefunction,
    MultimodeProductState,
    sample_wavefunction,
)
from .tomography import SampledDensity, SymplecticFrame, symplectic_tomogram
from .transforms import momentum_representation

LN_PI_E = math.log(math.pi * math.e)


def _finite(value: float) -> float:
    if not math.isfinite(value):
        raise InvalidInputError(f"entropy evaluated to {value}")
    return value


def shannon_entropy(density: SampledDensity) -> float:
    """-int w ln w, with 0 ln 0 = 0."""
    return _finite(_accel.neg_xlogx_sum(density.weights, density.quadrature_weights))


def renyi_integral(density: SampledDensity, alpha: float) -> float:
    """int w**alpha over the density's grid."""
    if not alpha > 0:
        raise InvalidParameterError(f"alpha must be > 0, got {alpha}")
    return _accel.power_sum(density.weights, alpha, density.quadrature_weights)


def renyi_entropy(density: SampledDensity, alpha: float) -> float:
    if alpha == 1:
        raise InvalidParameterError("alpha = 1 is the Shannon entropy; use shannon_entropy")
    return _finite(math.log(renyi_integral(density, alpha)) / (1.0 - alpha))


def _marginals_1d(state):
    """Position and momentum densities of a one-mode non-Gaussian state."""
    if isinstance(state, FockSuperposition):
        state = sample_wavefunction(state, DEFAULT_GRID)
    if isinstance(state, GridWavefunction):
        g = state.grid
        px = state.probability
        pp = momentum_representation(state).probability
    elif isinstance(state, DensityMatrix):
        g = state.grid
        px = state.diagonal
        f = np.exp(-1j * np.outer(g.points, g.points)) * g.weights / math.sqrt(2.0 * math.pi)
        pp = np.einsum("ki,ij,kj->k", f, state.elements, f.conj()).real
    else:
        raise InvalidInputError(f"unsupported state type {type(state).__name__}")
    px = np.clip(px, 0.0, None)
    pp = np.clip(pp, 0.0, None)
    return (SampledDensity([g], px / g.integrate(px)),
            SampledDensity([g], pp / g.integrate(pp)))


def marginal_densities(state):
    """(position density, momentum density) for a one-mode grid-based state."""
    return _marginals_1d(state)


def position_momentum_entropies(state):
    """(S_x, S_p): Shannon entropies of the position and momentum laws.

    Multimode states give the joint entropies S_x(vector), S_p(vector).
    """
    if isinstance(state, GaussianStateSpec):
        q = np.arange(0, 2 * state.n_modes, 2)
        p = q + 1
        gx = ProjectedGaussian(state.mean[q], state.covariance[np.ix_(q, q)])
        gp = ProjectedGaussian(state.mean[p], state.covariance[np.ix_(p, p)])
        return gaussian_shannon_entropy(gx), gaussian_shannon_entropy(gp)
    if isinstance(state, MultimodeProductState):
        parts = [position_momentum_entropies(f) for f in state.factors]
        return sum(a for a, _ in parts), sum(b for _, b in parts)
    dx, dp = _marginals_1d(state)
    return shannon_entropy(dx), shannon_entropy(dp)


def von_neumann_entropy(rho: DensityMatrix) -> float:
    lam = rho.spectrum()
    if lam.min() < -1e-6:
        raise NonphysicalMatrixError(f"eigenvalue {lam.min():.3g} below -1e-6")
    lam = np.clip(lam, 0.0, 1.0)
    lam = lam[lam > 0.0]
    return _finite(float(-np.sum(lam * np.log(lam))))


def entropy_scaling_offset(state, theta: float, r: float) -> float:
    """S(r cos theta, r sin theta) - ln r; independent of r for every state."""
    if not r > 0:
        raise DegenerateFrameError(f"radius must be > 0, got {r}")
    frame = SymplecticFrame.polar(r, theta)
    w = symplectic_tomogram(state, frame, DEFAULT_GRID.scaled(r))
    return shannon_entropy(w) - math.log(r)
