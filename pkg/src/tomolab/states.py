"""State descriptions: Fock superpositions, Gaussian specifications,
sampled wavefunctions, product states and grid density matrices.

Units are dimensionless quadratures with hbar = 1, so the vacuum has
position and momentum variance 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _accel
from .errors import (
    InvalidInputError,
    InvalidStateError,
    NonphysicalMatrixError,
    NonphysicalStateError,
    WrongArityError,
)

FOCK_NMAX_CAP = 64
MODE_CAP = 3


def _frozen(a):
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class ModeGrid:
    """Uniform grid ``x_min .. x_max`` (inclusive) with ``n_points`` nodes."""

    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise InvalidInputError("grid bounds must be finite")
        if not self.x_min < self.x_max:
            raise InvalidInputError(f"need x_min < x_max, got {self.x_min}, {self.x_max}")
        if int(self.n_points) != self.n_points or self.n_points < 16:
            raise InvalidInputError(f"n_points must be an integer >= 16, got {self.n_points}")
        object.__setattr__(self, "x_min", float(self.x_min))
        object.__setattr__(self, "x_max", float(self.x_max))
        object.__setattr__(self, "n_points", int(self.n_points))

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @cached_property
    def points(self) -> np.ndarray:
        return _frozen(np.linspace(self.x_min, self.x_max, self.n_points))

    @cached_property
    def weights(self) -> np.ndarray:
        """Trapezoid quadrature weights."""
        w = np.full(self.n_points, self.spacing)
        w[0] = w[-1] = 0.5 * self.spacing
        return _frozen(w)

    @property
    def is_symmetric(self) -> bool:
        return abs(self.x_min + self.x_max) <= 1e-12 * max(abs(self.x_min), abs(self.x_max))

    def scaled(self, factor: float) -> "ModeGrid":
        """The same node count stretched by ``factor`` (> 0)."""
        return ModeGrid(self.x_min * factor, self.x_max * factor, self.n_points)

    def integrate(self, values) -> float:
        return float(np.dot(self.weights, values))


DEFAULT_GRID = ModeGrid(-8.0, 8.0, 1024)


def tensor_weights(grids) -> np.ndarray:
    """Trapezoid weights of a tensor-product grid."""
    w = np.ones(())
    for g in grids:
        w = np.multiply.outer(w, g.weights)
    return w


@dataclass(frozen=True, eq=False)
class FockSuperposition:
    coefficients: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=np.complex128).ravel()
        if c.size == 0:
            raise InvalidStateError("no coefficients")
        if c.size - 1 > FOCK_NMAX_CAP:
            raise InvalidStateError(f"nmax {c.size - 1} exceeds cap {FOCK_NMAX_CAP}")
        if not np.all(np.isfinite(c)):
            raise InvalidStateError("non-finite coefficient")
        if abs(np.vdot(c, c).real - 1.0) > 1e-10:
            raise InvalidStateError("Fock coefficients are not normalized")
        object.__setattr__(self, "coefficients", _frozen(c))

    @property
    def nmax(self) -> int:
        return self.coefficients.size - 1

    n_modes = 1


def make_fock_superposition(coeffs) -> FockSuperposition:
    """Normalize ``coeffs`` (c_0, c_1, ...) into a Fock superposition."""
    c = np.asarray(coeffs, dtype=np.complex128).ravel()
    norm = np.linalg.norm(c)
    if c.size == 0 or norm == 0.0:
        raise InvalidStateError("all-zero coefficient vector")
    return FockSuperposition(c / norm)


def fock_state(n: int) -> FockSuperposition:
    c = np.zeros(n + 1, dtype=np.complex128)
    c[n] = 1.0
    return FockSuperposition(c)


def vacuum() -> FockSuperposition:
    return fock_state(0)


@dataclass(frozen=True, eq=False)
class GridWavefunction:
    grid: ModeGrid
    samples: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=np.complex128).ravel()
        if s.size != self.grid.n_points:
            raise InvalidInputError(
                f"{s.size} samples for a grid of {self.grid.n_points} points")
        if not np.all(np.isfinite(s)):
            raise InvalidStateError("non-finite wavefunction sample")
        norm = self.grid.integrate(np.abs(s) ** 2)
        if abs(norm - 1.0) > 1e-8:
            raise InvalidStateError(f"wavefunction norm {norm!r} is not 1")
        object.__setattr__(self, "samples", _frozen(s))

    n_modes = 1

    @classmethod
    def normalized(cls, grid: ModeGrid, samples) -> "GridWavefunction":
        s = np.asarray(samples, dtype=np.complex128).ravel()
        norm = grid.integrate(np.abs(s) ** 2)
        if not norm > 0.0:
            raise InvalidStateError("wavefunction vanishes on the grid")
        return cls(grid, s / math.sqrt(norm))

    @property
    def probability(self) -> np.ndarray:
        return np.abs(self.samples) ** 2


def sample_wavefunction(state: FockSuperposition, grid: ModeGrid = DEFAULT_GRID) -> GridWavefunction:
    """Evaluate sum_n c_n phi_n(x) on ``grid`` and renormalize."""
    table = _accel.hermite_table(state.nmax, grid.points)
    return GridWavefunction.normalized(grid, state.coefficients @ table)


def symplectic_form(n_modes: int) -> np.ndarray:
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


@dataclass(frozen=True, eq=False)
class GaussianStateSpec:
    """Mean and covariance in (q1, p1, ..., qN, pN) ordering."""

    n_modes: int
    mean: np.ndarray
    covariance: np.ndarray

    def __post_init__(self):
        n = self.n_modes
        if int(n) != n or n < 1:
            raise InvalidInputError(f"n_modes must be a positive integer, got {n}")
        mean = np.asarray(self.mean, dtype=np.float64).ravel()
        cov = np.asarray(self.covariance, dtype=np.float64)
        if mean.shape != (2 * n,) or cov.shape != (2 * n, 2 * n):
            raise InvalidInputError(
                f"need a length-{2 * n} mean and {2 * n}x{2 * n} covariance, "
                f"got {mean.shape} and {cov.shape}")
        if not (np.all(np.isfinite(mean)) and np.all(np.isfinite(cov))):
            raise InvalidInputError("non-finite Gaussian parameters")
        if np.max(np.abs(cov - cov.T)) > 1e-12:
            raise InvalidInputError("covariance matrix is not symmetric")
        eig = np.linalg.eigvalsh(cov + 0.5j * symplectic_form(n))
        if eig.min() < -1e-10:
            raise NonphysicalStateError(
                f"nonphysical-state: covariance violates the uncertainty "
                f"condition (min eigenvalue of V + i/2 Omega = {eig.min():.3g})")
        object.__setattr__(self, "n_modes", int(n))
        object.__setattr__(self, "mean", _frozen(mean))
        object.__setattr__(self, "covariance", _frozen(0.5 * (cov + cov.T)))

    @property
    def is_pure(self) -> bool:
        return abs(np.linalg.det(self.covariance) - 4.0 ** -self.n_modes) <= 1e-9

    def mode(self, k: int) -> "GaussianStateSpec":
        """Reduced single-mode state of mode ``k``."""
        sl = slice(2 * k, 2 * k + 2)
        return GaussianStateSpec(1, self.mean[sl], self.covariance[sl, sl])


def make_gaussian_state(mean, cov) -> GaussianStateSpec:
    mean = np.asarray(mean, dtype=np.float64).ravel()
    if mean.size % 2 or mean.size == 0:
        raise InvalidInputError("mean vector length must be a positive even number")
    return GaussianStateSpec(mean.size // 2, mean, cov)


def gaussian_vacuum(n_modes: int = 1) -> GaussianStateSpec:
    return GaussianStateSpec(n_modes, np.zeros(2 * n_modes), 0.5 * np.eye(2 * n_modes))


def squeezed_vacuum(r: float) -> GaussianStateSpec:
    """Position variance e^{2r}/2, momentum variance e^{-2r}/2."""
    return GaussianStateSpec(1, np.zeros(2), 0.5 * np.diag([math.exp(2 * r), math.exp(-2 * r)]))


def two_mode_squeezed_vacuum(r: float) -> GaussianStateSpec:
    c, s = math.cosh(2 * r), math.sinh(2 * r)
    z = np.diag([1.0, -1.0])
    cov = 0.5 * np.block([[c * np.eye(2), s * z], [s * z, c * np.eye(2)]])
    return GaussianStateSpec(2, np.zeros(4), cov)


def gaussian_wavefunction(state: GaussianStateSpec, grid: ModeGrid = DEFAULT_GRID) -> GridWavefunction:
    """Sample a pure one-mode Gaussian state as a wavefunction."""
    if state.n_modes != 1:
        raise WrongArityError("gaussian_wavefunction needs a one-mode state")
    if not state.is_pure:
        raise InvalidStateError("mixed Gaussian states have no wavefunction")
    q0, p0 = state.mean
    vqq, vqp = state.covariance[0, 0], state.covariance[0, 1]
    x = grid.points - q0
    psi = np.exp(-x * x * (1.0 - 2j * vqp) / (4.0 * vqq) + 1j * p0 * grid.points)
    return GridWavefunction.normalized(grid, psi)


@dataclass(frozen=True, eq=False)
class MultimodeProductState:
    factors: tuple

    def __post_init__(self):
        factors = tuple(self.factors)
        if not factors:
            raise InvalidStateError("product state needs at least one factor")
        if len(factors) > MODE_CAP:
            raise InvalidStateError(f"at most {MODE_CAP} modes supported")
        for f in factors:
            if not isinstance(f, (FockSuperposition, GridWavefunction)):
                raise InvalidStateError(f"unsupported product factor {type(f).__name__}")
        object.__setattr__(self, "factors", factors)

    @property
    def n_modes(self) -> int:
        return len(self.factors)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Kernel rho(x_i, x_j) on a uniform grid (continuum normalization)."""

    grid: ModeGrid
    elements: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.elements, dtype=np.complex128)
        n = self.grid.n_points
        if rho.shape != (n, n):
            raise InvalidInputError(f"density matrix must be {n}x{n}, got {rho.shape}")
        if not np.all(np.isfinite(rho)):
            raise InvalidInputError("non-finite density matrix element")
        if np.max(np.abs(rho - rho.conj().T)) > 1e-8:
            raise NonphysicalMatrixError("density matrix is not Hermitian")
        tr = self.grid.integrate(np.diag(rho).real)
        if abs(tr - 1.0) > 1e-6:
            raise NonphysicalMatrixError(f"density matrix trace {tr!r} is not 1")
        object.__setattr__(self, "elements", _frozen(rho))
        lam = self.spectrum().min()
        if lam < -1e-6:
            raise NonphysicalMatrixError(f"density matrix has eigenvalue {lam:.3g} < 0")

    n_modes = 1

    def operator(self) -> np.ndarray:
        """The matrix sqrt(W) rho sqrt(W) whose eigenvalues are the state's spectrum."""
        sw = np.sqrt(self.grid.weights)
        return sw[:, None] * self.elements * sw[None, :]

    def spectrum(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.operator())

    @property
    def diagonal(self) -> np.ndarray:
        return np.diag(self.elements).real.copy()

    def expectation(self, psi: GridWavefunction) -> float:
        """<psi|rho|psi> (fidelity against a pure reference)."""
        if psi.grid != self.grid:
            raise InvalidInputError("reference wavefunction lives on a different grid")
        v = psi.samples * self.grid.weights
        return float(np.real(np.vdot(v, self.elements @ v)))


def pure_density_matrix(psi: GridWavefunction) -> DensityMatrix:
    return DensityMatrix(psi.grid, np.outer(psi.samples, psi.samples.conj()))


def mixed_density_matrix(states, probabilities) -> DensityMatrix:
    """sum_k p_k |psi_k><psi_k| for wavefunctions sharing one grid, trace-normalized."""
    states = list(states)
    p = np.asarray(probabilities, dtype=np.float64)
    if len(states) != p.size or not states:
        raise InvalidInputError("need one probability per state")
    if np.any(p < 0):
        raise InvalidInputError("probabilities must be nonnegative")
    grid = states[0].grid
    if any(s.grid != grid for s in states):
        raise InvalidInputError("all states must share one grid")
    amps = np.array([s.samples for s in states])
    rho = (amps.T * p) @ amps.conj()
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(grid, rho / grid.integrate(np.diag(rho).real))
