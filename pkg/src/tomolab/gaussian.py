"""Closed forms for Gaussian states.

A Gaussian state observed through frames (mu_k, nu_k) gives a Gaussian
quadrature vector X with mean T m and covariance T V T^T, where row k of
T holds (mu_k, nu_k) in the (q_k, p_k) slots.  Everything below is exact
arithmetic on that projected distribution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateFrameError, InvalidParameterError, WrongArityError
from .states import GaussianStateSpec, ModeGrid


@dataclass(frozen=True, eq=False)
class ProjectedGaussian:
    mean: np.ndarray
    covariance: np.ndarray

    def __post_init__(self):
        mean = np.atleast_1d(np.asarray(self.mean, dtype=np.float64))
        cov = np.atleast_2d(np.asarray(self.covariance, dtype=np.float64))
        if cov.shape != (mean.size, mean.size):
            raise WrongArityError("mean/covariance size mismatch")
        cov = 0.5 * (cov + cov.T)
        if np.linalg.eigvalsh(cov).min() <= 1e-12:
            raise DegenerateFrameError("projected covariance is singular")
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "covariance", cov)

    @property
    def n(self) -> int:
        return self.mean.size

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.covariance))


def frame_matrix(frames, n_modes: int) -> np.ndarray:
    t = np.zeros((n_modes, 2 * n_modes))
    for k, f in enumerate(frames):
        t[k, 2 * k] = f.mu
        t[k, 2 * k + 1] = f.nu
    return t


def projected_covariance(state: GaussianStateSpec, frames) -> ProjectedGaussian:
    frames = list(frames)
    if len(frames) != state.n_modes:
        raise WrongArityError(
            f"{len(frames)} frames for a {state.n_modes}-mode state")
    for f in frames:
        if f.r == 0.0:
            raise DegenerateFrameError("frame with mu = nu = 0")
    t = frame_matrix(frames, state.n_modes)
    return ProjectedGaussian(t @ state.mean, t @ state.covariance @ t.T)


def gaussian_shannon_entropy(g: ProjectedGaussian) -> float:
    """(1/2) ln((2 pi e)^N det Sigma)."""
    sign, logdet = np.linalg.slogdet(g.covariance)
    return float(0.5 * (g.n * math.log(2.0 * math.pi * math.e) + logdet))


def gaussian_renyi_integral(g: ProjectedGaussian, alpha: float) -> float:
    """Integral of w**alpha: det(2 pi Sigma)^((1 - alpha)/2) alpha^(-N/2)."""
    if not alpha > 0.0:
        raise InvalidParameterError(f"alpha must be > 0, got {alpha}")
    return math.exp(gaussian_log_renyi_integral(g, alpha))


def gaussian_log_renyi_integral(g: ProjectedGaussian, alpha: float) -> float:
    """Natural log of :func:`gaussian_renyi_integral`, without over/underflow."""
    if not alpha > 0.0:
        raise InvalidParameterError(f"alpha must be > 0, got {alpha}")
    _, logdet = np.linalg.slogdet(2.0 * math.pi * g.covariance)
    return float(0.5 * (1.0 - alpha) * logdet - 0.5 * g.n * math.log(alpha))


def gaussian_density(g: ProjectedGaussian, grids) -> np.ndarray:
    """Probability density of ``g`` on the tensor product of ``grids``."""
    grids = list(grids)
    if len(grids) != g.n:
        raise WrongArityError("one grid per quadrature needed")
    axes = np.meshgrid(*[gr.points for gr in grids], indexing="ij")
    d = np.stack([a - m for a, m in zip(axes, g.mean)], axis=-1)
    prec = np.linalg.inv(g.covariance)
    quad = np.einsum("...i,ij,...j->...", d, prec, d)
    _, logdet = np.linalg.slogdet(2.0 * math.pi * g.covariance)
    return np.exp(-0.5 * quad - 0.5 * logdet)


def gaussian_optical_density(g: ProjectedGaussian, grid: ModeGrid) -> np.ndarray:
    return gaussian_density(g, [grid])


def gaussian_characteristic(state: GaussianStateSpec, mu, nu):
    """<exp(i (mu q + nu p))> for a one-mode state, vectorized over mu, nu."""
    if state.n_modes != 1:
        raise WrongArityError("characteristic function implemented for one mode")
    mu = np.asarray(mu, dtype=np.float64)
    nu = np.asarray(nu, dtype=np.float64)
    (mq, mp), v = state.mean, state.covariance
    var = mu * mu * v[0, 0] + 2 * mu * nu * v[0, 1] + nu * nu * v[1, 1]
    return np.exp(1j * (mu * mq + nu * mp) - 0.5 * var)
