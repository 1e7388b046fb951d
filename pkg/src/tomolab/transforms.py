"""Hermite functions and quadrature rotation (fractional Fourier transform).

Rotation convention: for psi = sum_n c_n phi_n the rotated amplitude is
sum_n c_n exp(-i n theta) phi_n, whose squared modulus is the distribution
of q cos(theta) + p sin(theta).  Grid wavefunctions are rotated by direct
quadrature of the Mehler kernel

    K(X, y) = exp(i theta / 2) (2 pi i sin theta)^(-1/2)
              * exp(i [(X^2 + y^2) cos theta - 2 X y] / (2 sin theta)).
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from . import _accel
from .errors import InvalidInputError, TruncationError
from .states import FockSuperposition, GridWavefunction

TWO_PI = 2.0 * math.pi
SINGULAR_SIN = 1e-6
# Below this |sin(theta)| the chirp is too fast for the grid; route through
# theta - pi/2 followed by a quarter turn instead.
_DIRECT_SIN = 0.5
_NORM_TOL = 1e-8


def reduce_angle(theta) -> float:
    """Angle reduced to [0, 2 pi)."""
    theta = float(theta)
    if not math.isfinite(theta):
        raise InvalidInputError(f"rotation angle must be finite, got {theta}")
    t = math.fmod(theta, TWO_PI)
    if t < 0.0:
        t += TWO_PI
    return 0.0 if t >= TWO_PI else t


def hermite_function(n: int, x):
    """Normalized Hermite function phi_n at ``x`` (scalar or array)."""
    if int(n) != n or n < 0 or n > 200:
        raise InvalidInputError(f"need 0 <= n <= 200, got {n}")
    xa = np.asarray(x, dtype=np.float64)
    vals = _accel.hermite_table(int(n), xa.ravel())[int(n)].reshape(xa.shape)
    return float(vals) if vals.ndim == 0 else vals


def hermite_functions(nmax: int, x) -> np.ndarray:
    """Table of shape (nmax + 1, len(x)) holding phi_0..phi_nmax."""
    return _accel.hermite_table(nmax, x)


def fock_rotated_amplitude(state: FockSuperposition, theta, x) -> np.ndarray:
    """sum_n c_n exp(-i n theta) phi_n(x)."""
    theta = reduce_angle(theta)
    n = np.arange(state.nmax + 1)
    phased = state.coefficients * np.exp(-1j * n * theta)
    return phased @ _accel.hermite_table(state.nmax, x)


def _kernel_apply(samples, grid, theta, targets):
    theta = reduce_angle(theta)
    s, c = math.sin(theta), math.cos(theta)
    y = grid.points
    pref = cmath.exp(0.5j * theta) / cmath.sqrt(2j * math.pi * s)
    if s < 0.0:
        # branch continuation of the square root past theta = pi
        pref = -pref
    a = samples * grid.weights * np.exp(0.5j * (c / s) * y * y)
    targets = np.asarray(targets, dtype=np.float64)
    chirp = np.exp(0.5j * (c / s) * targets * targets)
    return pref * chirp * _accel.chirp_sum(a, y, targets, 1.0 / s)


def rotated_amplitude(psi: GridWavefunction, theta, targets) -> np.ndarray:
    """Rotated amplitude of a grid wavefunction evaluated at arbitrary points.

    No renormalization is applied; the result is the raw kernel quadrature.
    """
    t = reduce_angle(theta)
    if abs(math.sin(t)) >= _DIRECT_SIN:
        return _kernel_apply(psi.samples, psi.grid, t, targets)
    mid = _kernel_apply(psi.samples, psi.grid, t - 0.5 * math.pi, psi.grid.points)
    return _kernel_apply(mid, psi.grid, 0.5 * math.pi, targets)


def _checked(grid, samples, what):
    norm = grid.integrate(np.abs(samples) ** 2)
    if abs(norm - 1.0) > _NORM_TOL:
        raise TruncationError(
            f"{what} lost norm ({norm!r}); widen or refine the grid")
    return GridWavefunction(grid, samples / math.sqrt(norm))


def quadrature_rotate(psi: GridWavefunction, theta) -> GridWavefunction:
    """Rotate ``psi`` in phase space by ``theta``; output on the same grid."""
    t = reduce_angle(theta)
    s, c = math.sin(t), math.cos(t)
    if abs(s) < SINGULAR_SIN:
        if c > 0.0:
            return psi
        if psi.grid.is_symmetric:
            # exp(-i n pi) = (-1)^n, i.e. x -> -x
            return GridWavefunction(psi.grid, psi.samples[::-1])
    return _checked(psi.grid, rotated_amplitude(psi, t, psi.grid.points), "rotation")


def momentum_representation(psi: GridWavefunction) -> GridWavefunction:
    """Momentum amplitude (2 pi)^(-1/2) sum_j psi(x_j) exp(-i p x_j) dx on the same grid."""
    g = psi.grid
    amp = _accel.chirp_sum(psi.samples * g.weights, g.points, g.points, 1.0)
    return _checked(g, amp / math.sqrt(TWO_PI), "momentum transform")
