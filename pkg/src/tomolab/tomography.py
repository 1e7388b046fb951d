"""Forward maps (state -> optical, symplectic and multimode tomograms) and
the inverse map (tomograms -> density matrix).

Symplectic tomograms are reduced to optical ones by homogeneity:
w(X, mu, nu) = w_opt(X / r, theta) / r with r = hypot(mu, nu) and
theta = atan2(nu, mu).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateFrameError,
    InvalidInputError,
    TruncationError,
    UnsupportedSourceError,
    WrongArityError,
)
from .gaussian import gaussian_characteristic, gaussian_density, projected_covariance
from .states import (
    DEFAULT_GRID,
    FOCK_NMAX_CAP,
    MODE_CAP,
    DensityMatrix,
    FockSuperposition,
    GaussianStateSpec,
    GridWavefunction,
    ModeGrid,
    MultimodeProductState,
    tensor_weights,
)
from .transforms import (
    fock_rotated_amplitude,
    hermite_functions,
    quadrature_rotate,
    reduce_angle,
    rotated_amplitude,
)

MULTIMODE_GRID = ModeGrid(-8.0, 8.0, 128)
RECONSTRUCTION_GRID = ModeGrid(-6.0, 6.0, 65)
# X grid for the characteristic-function integrals; frequencies stay below
# hypot(mu_cutoff, 12) ~ 16, far under the Nyquist limit of this grid.
RECONSTRUCTION_TOMOGRAM_GRID = ModeGrid(-8.0, 8.0, 256)
NORM_TOL = 1e-6
MULTIMODE_NORM_TOL = 1e-5


@dataclass(frozen=True)
class SymplecticFrame:
    """Reference frame (mu, nu): the tomogram is the law of mu q + nu p."""

    mu: float
    nu: float

    def __post_init__(self):
        object.__setattr__(self, "mu", float(self.mu))
        object.__setattr__(self, "nu", float(self.nu))
        if not (math.isfinite(self.mu) and math.isfinite(self.nu)):
            raise InvalidInputError("frame parameters must be finite")

    @classmethod
    def polar(cls, r: float, theta: float) -> "SymplecticFrame":
        return cls(r * math.cos(theta), r * math.sin(theta))

    @property
    def r(self) -> float:
        return math.hypot(self.mu, self.nu)

    @property
    def theta(self) -> float:
        return math.atan2(self.nu, self.mu)

    def quarter_turn(self) -> "SymplecticFrame":
        """Frame (-nu, mu): the conjugate quadrature at the same radius."""
        return SymplecticFrame(-self.nu, self.mu)

    def scaled(self, lam: float) -> "SymplecticFrame":
        return SymplecticFrame(lam * self.mu, lam * self.nu)


@dataclass(frozen=True, eq=False)
class SampledDensity:
    """Nonnegative normalized density on a 1-D grid or a tensor of grids."""

    grids: tuple
    weights: np.ndarray

    def __post_init__(self):
        grids = tuple(self.grids) if not isinstance(self.grids, ModeGrid) else (self.grids,)
        w = np.asarray(self.weights, dtype=np.float64)
        shape = tuple(g.n_points for g in grids)
        if w.shape != shape:
            raise InvalidInputError(f"weights shape {w.shape} does not match grid {shape}")
        if not np.all(np.isfinite(w)):
            raise InvalidInputError("non-finite tomogram value")
        if w.min() < 0.0:
            raise InvalidInputError("tomogram must be nonnegative")
        total = float(np.sum(tensor_weights(grids) * w))
        if abs(total - 1.0) > NORM_TOL:
            raise InvalidInputError(f"tomogram integrates to {total!r}, not 1")
        w = w.copy()
        w.setflags(write=False)
        object.__setattr__(self, "grids", grids)
        object.__setattr__(self, "weights", w)

    @property
    def ndim(self) -> int:
        return len(self.grids)

    @property
    def grid(self) -> ModeGrid:
        if self.ndim != 1:
            raise WrongArityError("grid is only defined for 1-D densities")
        return self.grids[0]

    @property
    def quadrature_weights(self) -> np.ndarray:
        return tensor_weights(self.grids)

    def integral(self) -> float:
        return float(np.sum(self.quadrature_weights * self.weights))


@dataclass(frozen=True, eq=False)
class MultimodeTomogram:
    frames: tuple
    density: SampledDensity


def _normalized(grids, w, tol=NORM_TOL) -> SampledDensity:
    grids = tuple(grids)
    total = float(np.sum(tensor_weights(grids) * w))
    if abs(total - 1.0) > tol:
        raise TruncationError(
            f"tomogram mass on the grid is {total!r}; widen the X grid")
    return SampledDensity(grids, w / total)


def _density_matrix_mixture(rho: DensityMatrix, cutoff=1e-13):
    lam, vecs = np.linalg.eigh(rho.operator())
    keep = lam > cutoff
    sw = np.sqrt(rho.grid.weights)
    return lam[keep], vecs[:, keep] / sw[:, None]


def _optical_values(state, theta, x) -> np.ndarray:
    """Unnormalized optical tomogram w(x, theta) at arbitrary points."""
    x = np.asarray(x, dtype=np.float64)
    if isinstance(state, FockSuperposition):
        return np.abs(fock_rotated_amplitude(state, theta, x)) ** 2
    if isinstance(state, GridWavefunction):
        if x.shape == state.grid.points.shape and np.array_equal(x, state.grid.points):
            return quadrature_rotate(state, theta).probability
        return np.abs(rotated_amplitude(state, theta, x)) ** 2
    if isinstance(state, DensityMatrix):
        lam, vecs = _density_matrix_mixture(state)
        out = np.zeros(x.size)
        for p, v in zip(lam, vecs.T):
            psi = GridWavefunction.normalized(state.grid, v)
            out += p * _optical_values(psi, theta, x)
        return out
    if isinstance(state, GaussianStateSpec):
        if state.n_modes != 1:
            raise WrongArityError("optical tomogram of a multimode Gaussian needs multimode_tomogram")
        g = projected_covariance(state, [SymplecticFrame(math.cos(theta), math.sin(theta))])
        return gaussian_density(g, [_PointSet(x)])
    if isinstance(state, MultimodeProductState):
        raise WrongArityError("multimode state: use multimode_tomogram")
    raise InvalidInputError(f"unsupported state type {type(state).__name__}")


class _PointSet:
    """Duck-typed grid holding arbitrary points (for closed-form evaluation)."""

    def __init__(self, x):
        self.points = x


def optical_tomogram(state, theta, grid: ModeGrid = DEFAULT_GRID) -> SampledDensity:
    """w(X, theta) on ``grid``: the law of q cos(theta) + p sin(theta)."""
    theta = reduce_angle(theta)
    return _normalized([grid], _optical_values(state, theta, grid.points))


def symplectic_tomogram(state, frame: SymplecticFrame, grid: ModeGrid | None = None) -> SampledDensity:
    """w(X, mu, nu) on ``grid``.

    The default grid is the default optical grid stretched by r, so that
    X / r lands exactly on optical nodes.
    """
    r = frame.r
    if r == 0.0:
        raise DegenerateFrameError("frame (0, 0): the tomogram is delta(X)")
    if grid is None:
        grid = DEFAULT_GRID.scaled(r)
    theta = reduce_angle(frame.theta)
    if abs(r - 1.0) <= 1e-12:
        return optical_tomogram(state, theta, grid)
    if isinstance(state, GaussianStateSpec) and state.n_modes == 1:
        g = projected_covariance(state, [frame])
        return _normalized([grid], gaussian_density(g, [grid]))
    return _normalized([grid], _optical_values(state, theta, grid.points / r) / r)


def multimode_tomogram(state, frames, grids=None) -> MultimodeTomogram:
    """Joint tomogram of N modes observed through one frame each."""
    frames = tuple(frames)
    n = getattr(state, "n_modes", None)
    if n is None:
        raise InvalidInputError(f"unsupported state type {type(state).__name__}")
    if len(frames) != n:
        raise WrongArityError(f"{len(frames)} frames for a {n}-mode state")
    if n > MODE_CAP:
        raise WrongArityError(f"at most {MODE_CAP} modes supported")
    for f in frames:
        if f.r == 0.0:
            raise DegenerateFrameError("frame with mu = nu = 0")
    if grids is None:
        grids = [MULTIMODE_GRID.scaled(f.r) for f in frames]
    elif isinstance(grids, ModeGrid):
        grids = [grids] * n
    grids = list(grids)
    if len(grids) != n:
        raise WrongArityError("one grid per mode needed")

    if isinstance(state, GaussianStateSpec):
        w = gaussian_density(projected_covariance(state, frames), grids)
    else:
        factors = state.factors if isinstance(state, MultimodeProductState) else (state,)
        w = np.ones(())
        for factor, frame, g in zip(factors, frames, grids):
            w = np.multiply.outer(w, symplectic_tomogram(factor, frame, g).weights)
    return MultimodeTomogram(frames, _normalized(grids, w, MULTIMODE_NORM_TOL))


# ------------------------------------------------------------ reconstruction


@dataclass(frozen=True, eq=False)
class OpticalTomogramTable:
    """Optical tomograms measured on an angle grid covering [0, pi).

    Angles outside [0, pi) use w(X, theta + pi) = w(-X, theta), so the
    X grid must be symmetric.  Between tabulated angles the tomogram is
    interpolated linearly.
    """

    grid: ModeGrid
    thetas: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        th = np.asarray(self.thetas, dtype=np.float64)
        w = np.asarray(self.weights, dtype=np.float64)
        if w.shape != (th.size, self.grid.n_points):
            raise InvalidInputError("table weights must be (n_theta, n_points)")
        if th.size < 2 or np.any(np.diff(th) <= 0) or th[0] < 0 or th[-1] >= math.pi:
            raise InvalidInputError("table angles must increase strictly within [0, pi)")
        if not self.grid.is_symmetric:
            raise InvalidInputError("table X grid must be symmetric about 0")
        object.__setattr__(self, "thetas", th)
        object.__setattr__(self, "weights", w)

    def optical(self, thetas) -> np.ndarray:
        """Tomograms at ``thetas`` on the table grid, shape (len(thetas), n_points)."""
        th = np.mod(np.asarray(thetas, dtype=np.float64), 2.0 * math.pi)
        flip = th >= math.pi
        th = np.where(flip, th - math.pi, th)
        # extend periodically: row n is row 0 reflected at theta_0 + pi
        ext_t = np.append(self.thetas, self.thetas[0] + math.pi)
        ext_w = np.vstack([self.weights, self.weights[0][::-1]])
        th = np.where(th < ext_t[0], th + math.pi, th)
        # th < theta_0 maps into the wrap-around interval, reflected again
        wrapped = th >= math.pi
        flip ^= wrapped
        th = np.where(wrapped, th - math.pi, th)
        wrapped_low = th < ext_t[0]
        th = np.where(wrapped_low, th + math.pi, th)
        flip ^= wrapped_low
        idx = np.clip(np.searchsorted(ext_t, th, side="right") - 1, 0, ext_t.size - 2)
        frac = (th - ext_t[idx]) / (ext_t[idx + 1] - ext_t[idx])
        rows = (1.0 - frac)[:, None] * ext_w[idx] + frac[:, None] * ext_w[idx + 1]
        rows[flip] = rows[flip][:, ::-1]
        return rows


def _fock_projection(psi: GridWavefunction, nmax=FOCK_NMAX_CAP, tol=1e-6):
    table = hermite_functions(nmax, psi.grid.points)
    c = table @ (psi.samples * psi.grid.weights)
    if 1.0 - np.vdot(c, c).real > tol:
        raise UnsupportedSourceError(
            "grid wavefunction is not representable with Fock states up to n = 64")
    return c


def _fock_mixture(source):
    """(probabilities, coefficient rows) describing ``source`` in the Fock basis."""
    if isinstance(source, FockSuperposition):
        return np.ones(1), source.coefficients[None, :]
    if isinstance(source, GridWavefunction):
        return np.ones(1), _fock_projection(source)[None, :]
    if isinstance(source, DensityMatrix):
        lam, vecs = _density_matrix_mixture(source)
        rows = [_fock_projection(GridWavefunction.normalized(source.grid, v)) for v in vecs.T]
        return lam / lam.sum(), np.array(rows)
    return None


def _characteristic(source, mu, nu, tomogram_grid, chunk=2048):
    """<exp(i (mu q + nu p))> assembled from optical tomograms of ``source``."""
    mu = np.asarray(mu, dtype=np.float64).ravel()
    nu = np.asarray(nu, dtype=np.float64).ravel()
    if isinstance(source, GaussianStateSpec):
        if source.n_modes != 1:
            raise UnsupportedSourceError("reconstruction handles one mode")
        return gaussian_characteristic(source, mu, nu)

    r = np.hypot(mu, nu)
    theta = np.arctan2(nu, mu)
    if isinstance(source, OpticalTomogramTable):
        u, wq = source.grid.points, source.grid.weights
        rows_at = source.optical
    else:
        mix = _fock_mixture(source)
        if mix is None:
            raise UnsupportedSourceError(
                f"cannot supply tomograms for {type(source).__name__}")
        probs, coeffs = mix
        u, wq = tomogram_grid.points, tomogram_grid.weights
        table = hermite_functions(coeffs.shape[1] - 1, u)
        n = np.arange(coeffs.shape[1])

        def rows_at(th):
            phase = np.exp(-1j * np.outer(th, n))
            out = np.zeros((th.size, u.size))
            for p, c in zip(probs, coeffs):
                out += p * np.abs((phase * c) @ table) ** 2
            return out

    chi = np.empty(mu.size, dtype=np.complex128)
    for start in range(0, mu.size, chunk):
        sl = slice(start, start + chunk)
        w = rows_at(theta[sl])
        chi[sl] = (np.exp(1j * np.outer(r[sl], u)) * w) @ wq
    return chi


def reconstruct_density(source, grid: ModeGrid = RECONSTRUCTION_GRID, mu_cutoff: float = 10.0,
                        mu_points: int = 512,
                        tomogram_grid: ModeGrid = RECONSTRUCTION_TOMOGRAM_GRID) -> DensityMatrix:
    """Density matrix rho(x, x') from symplectic tomograms.

    rho(x, x') = (1/2pi) int dX dmu w(X, mu, x - x') exp(i [X - mu (x + x')/2]),
    with the X integral carried out on optical tomograms through
    homogeneity and the mu integral truncated to [-mu_cutoff, mu_cutoff].
    """
    if not mu_cutoff > 0:
        raise InvalidInputError("mu_cutoff must be positive")
    if int(mu_points) != mu_points or mu_points < 3:
        raise InvalidInputError("mu_points must be an integer >= 3")
    mu_grid = np.linspace(-mu_cutoff, mu_cutoff, int(mu_points))
    mu_w = np.full(mu_grid.size, mu_grid[1] - mu_grid[0])
    mu_w[0] = mu_w[-1] = 0.5 * mu_w[0]

    n = grid.n_points
    x = grid.points
    lags = np.arange(-(n - 1), n)
    nu = lags * grid.spacing
    mm, nn = np.meshgrid(mu_grid, nu, indexing="ij")
    # chi(-mu, -nu) = conj(chi(mu, nu)); both grids are symmetric, so only
    # the first half (plus the centre) of the flattened array is computed
    flat_m, flat_n = mm.ravel(), nn.ravel()
    half = flat_m.size // 2 + 1
    chi_half = _characteristic(source, flat_m[:half], flat_n[:half], tomogram_grid)
    chi = np.concatenate([chi_half, chi_half[: flat_m.size - half][::-1].conj()]).reshape(mm.shape)

    i, j = np.indices((n, n))
    chi_ij = chi[:, i - j + (n - 1)]  # (n_mu, n, n)
    s = 0.5 * (x[:, None] + x[None, :])
    phase = np.exp(-1j * mu_grid[:, None, None] * s[None, :, :])
    rho = np.einsum("m,mij,mij->ij", mu_w, chi_ij, phase) / (2.0 * math.pi)
    rho = 0.5 * (rho + rho.conj().T)
    # interpolated or noisy tomograms can leave small negative eigenvalues;
    # clip them in the quadrature-weighted operator form before normalizing
    sw = np.sqrt(grid.weights)
    lam, vec = np.linalg.eigh(sw[:, None] * rho * sw[None, :])
    op = (vec * np.clip(lam, 0.0, None)) @ vec.conj().T
    rho = op / (sw[:, None] * sw[None, :])
    rho = 0.5 * (rho + rho.conj().T)
    rho /= grid.integrate(np.diag(rho).real)
    return DensityMatrix(grid, rho)
