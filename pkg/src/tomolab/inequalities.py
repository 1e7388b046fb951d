"""Entropic uncertainty inequalities evaluated as LHS / RHS / margin reports.

Every check returns an :class:`InequalityReport` whose margin is
``lhs - rhs``.  Physical states give margins >= 0 (up to quadrature
error); pure Gaussian states observed along principal axes give 0.

Renyi checks use the pair alpha = 1/(1-q), beta = 1/(1+q) with
0 < q < 1, so that 1/alpha + 1/beta = 2.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

from .entropy import (
    LN_PI_E,
    marginal_densities,
    position_momentum_entropies,
    renyi_integral,
    shannon_entropy,
)
from .errors import (
    DegenerateFrameError,
    InvalidInputError,
    InvalidParameterError,
    TomolabError,
    WrongArityError,
)
from .gaussian import (
    ProjectedGaussian,
    gaussian_log_renyi_integral,
    gaussian_shannon_entropy,
    projected_covariance,
)
from .states import (
    DEFAULT_GRID,
    DensityMatrix,
    GaussianStateSpec,
    GridWavefunction,
)
from .tomography import (
    SymplecticFrame,
    multimode_tomogram,
    optical_tomogram,
    symplectic_tomogram,
)

ANALYTIC_TOL = 1e-6
GRID_TOL = 1e-4
MULTIMODE_TOL = 1e-3

CHECKS = (
    "shannon_pm",
    "optical_shannon",
    "renyi_pm",
    "optical_renyi",
    "symplectic_renyi",
    "multimode_renyi",
    "multimode_optical_renyi",
)
_USES_THETA = {"optical_shannon", "optical_renyi", "symplectic_renyi",
               "multimode_renyi", "multimode_optical_renyi"}
_USES_Q = {"renyi_pm", "optical_renyi", "symplectic_renyi",
           "multimode_renyi", "multimode_optical_renyi"}


@dataclass(frozen=True)
class QParameter:
    q: float

    def __post_init__(self):
        q = float(self.q)
        if not 0.0 < q < 1.0:
            raise InvalidParameterError(f"q must lie in (0, 1), got {q}")
        object.__setattr__(self, "q", q)

    @property
    def alpha(self) -> float:
        return 1.0 / (1.0 - self.q)

    @property
    def beta(self) -> float:
        return 1.0 / (1.0 + self.q)


def _qp(q) -> QParameter:
    return q if isinstance(q, QParameter) else QParameter(q)


@dataclass(frozen=True)
class InequalityReport:
    name: str
    params: dict = field(compare=False)
    lhs: float
    rhs: float
    margin: float
    satisfied: bool
    tolerance: float

    @classmethod
    def build(cls, name, params, lhs, rhs, tolerance):
        lhs, rhs = float(lhs), float(rhs)
        margin = lhs - rhs
        if not all(map(math.isfinite, (lhs, rhs, tolerance))):
            raise InvalidInputError(f"{name}: non-finite report value")
        return cls(name, dict(params), lhs, rhs, margin, bool(margin >= -tolerance), float(tolerance))

    def to_dict(self) -> dict:
        return asdict(self)


def _tolerance(state, tolerance, multimode=False):
    if tolerance is not None:
        if not tolerance > 0:
            raise InvalidParameterError("tolerance must be > 0")
        return float(tolerance)
    if isinstance(state, GaussianStateSpec):
        return ANALYTIC_TOL
    return MULTIMODE_TOL if multimode else GRID_TOL


def _one_mode(state, what):
    if getattr(state, "n_modes", 1) != 1:
        raise WrongArityError(f"{what} needs a one-mode state")


def _grid_for(state, grid):
    if grid is not None:
        return grid
    if isinstance(state, (GridWavefunction, DensityMatrix)):
        return state.grid
    return DEFAULT_GRID


def renyi_rhs(q, n_modes: int = 1) -> float:
    """(N/2) [ (q-1)/q ln(pi (1-q)) + (q+1)/q ln(pi (1+q)) ]."""
    q = _qp(q).q
    if int(n_modes) != n_modes or n_modes < 1:
        raise InvalidParameterError("n_modes must be a positive integer")
    return 0.5 * n_modes * ((q - 1.0) / q * math.log(math.pi * (1.0 - q))
                            + (q + 1.0) / q * math.log(math.pi * (1.0 + q)))


def check_shannon_position_momentum(state, n_modes=None, tolerance=None) -> InequalityReport:
    """S_x + S_p >= N ln(pi e)."""
    n = getattr(state, "n_modes", 1)
    if n_modes is not None and n_modes != n:
        raise WrongArityError(f"state has {n} modes, not {n_modes}")
    sx, sp = position_momentum_entropies(state)
    return InequalityReport.build(
        "shannon_pm", {"N": n, "S_x": sx, "S_p": sp},
        sx + sp, n * LN_PI_E, _tolerance(state, tolerance, multimode=n > 1))


def _unit(theta):
    return SymplecticFrame(math.cos(theta), math.sin(theta))


def optical_shannon_report(w_theta, w_perp, theta, tolerance=GRID_TOL, extra=None) -> InequalityReport:
    """Optical Shannon relation from two sampled tomograms (theta, theta + pi/2)."""
    s1, s2 = shannon_entropy(w_theta), shannon_entropy(w_perp)
    params = {"theta": float(theta), "S_theta": s1, "S_theta_perp": s2, **(extra or {})}
    return InequalityReport.build("optical_shannon", params, s1 + s2, LN_PI_E, tolerance)


def optical_renyi_report(w_theta, w_perp, theta, q, tolerance=GRID_TOL, extra=None) -> InequalityReport:
    """Optical Renyi relation from two sampled tomograms (theta, theta + pi/2)."""
    qp = _qp(q)
    lhs = _renyi_pair_lhs(qp, math.log(renyi_integral(w_perp, qp.alpha)),
                          math.log(renyi_integral(w_theta, qp.beta)))
    params = {"theta": float(theta), "q": qp.q, **(extra or {})}
    return InequalityReport.build("optical_renyi", params, lhs, renyi_rhs(qp, 1), tolerance)


def check_optical_shannon(state, theta, tolerance=None, grid=None) -> InequalityReport:
    """S(theta) + S(theta + pi/2) >= ln(pi e)."""
    _one_mode(state, "optical Shannon check")
    theta = float(theta)
    tol = _tolerance(state, tolerance)
    if isinstance(state, GaussianStateSpec):
        s1 = gaussian_shannon_entropy(projected_covariance(state, [_unit(theta)]))
        s2 = gaussian_shannon_entropy(projected_covariance(state, [_unit(theta + 0.5 * math.pi)]))
        return InequalityReport.build(
            "optical_shannon", {"theta": theta, "S_theta": s1, "S_theta_perp": s2},
            s1 + s2, LN_PI_E, tol)
    grid = _grid_for(state, grid)
    return optical_shannon_report(
        optical_tomogram(state, theta, grid),
        optical_tomogram(state, theta + 0.5 * math.pi, grid), theta, tol)


def check_renyi_position_momentum(state, q, tolerance=None) -> InequalityReport:
    """Renyi position/momentum relation with alpha on the momentum law."""
    _one_mode(state, "Renyi position/momentum check")
    qp = _qp(q)
    a, b = qp.alpha, qp.beta
    if isinstance(state, GaussianStateSpec):
        gx = ProjectedGaussian(state.mean[:1], state.covariance[:1, :1])
        gp = ProjectedGaussian(state.mean[1:], state.covariance[1:, 1:])
        log_ip = gaussian_log_renyi_integral(gp, a)
        log_ix = gaussian_log_renyi_integral(gx, b)
    else:
        dx, dp = marginal_densities(state)
        log_ip = math.log(renyi_integral(dp, a))
        log_ix = math.log(renyi_integral(dx, b))
    lhs = log_ip / (1.0 - a) + log_ix / (1.0 - b)
    rhs = (-math.log(a / math.pi) / (2.0 * (1.0 - a))
           - math.log(b / math.pi) / (2.0 * (1.0 - b)))
    return InequalityReport.build(
        "renyi_pm", {"q": qp.q, "alpha": a, "beta": b},
        lhs, rhs, _tolerance(state, tolerance))


def _renyi_pair_lhs(qp, log_int_perp, log_int_given):
    q = qp.q
    return (q - 1.0) / q * log_int_perp + (q + 1.0) / q * log_int_given


def check_optical_renyi(state, theta, q, tolerance=None, grid=None) -> InequalityReport:
    """Renyi tomographic relation for optical tomograms at theta and theta + pi/2."""
    return _symplectic_renyi(state, 1.0, theta, q, tolerance, grid, "optical_renyi")


def check_symplectic_renyi(state, r, theta, q, tolerance=None, grid=None) -> InequalityReport:
    """Renyi relation for symplectic tomograms on the circle of radius ``r``.

    Homogeneity shifts each Renyi term by ln r, so the bound carries the
    radial term ln(mu^2 + nu^2) = 2 ln r; at r = 1 this is the optical check.
    """
    if not r > 0:
        raise DegenerateFrameError(f"radius must be > 0, got {r}")
    return _symplectic_renyi(state, float(r), theta, q, tolerance, grid, "symplectic_renyi")


def _symplectic_renyi(state, r, theta, q, tolerance, grid, name):
    _one_mode(state, name)
    qp = _qp(q)
    theta = float(theta)
    if r == 1.0 and not isinstance(state, GaussianStateSpec):
        base = _grid_for(state, grid)
        rep = optical_renyi_report(
            optical_tomogram(state, theta, base),
            optical_tomogram(state, theta + 0.5 * math.pi, base),
            theta, qp, _tolerance(state, tolerance))
        if name == "symplectic_renyi":
            rep = InequalityReport(name, {**rep.params, "r": 1.0}, rep.lhs, rep.rhs,
                                   rep.margin, rep.satisfied, rep.tolerance)
        return rep
    given = SymplecticFrame.polar(r, theta) if r != 1.0 else _unit(theta)
    perp = given.quarter_turn()
    if isinstance(state, GaussianStateSpec):
        lp = gaussian_log_renyi_integral(projected_covariance(state, [perp]), qp.alpha)
        lg = gaussian_log_renyi_integral(projected_covariance(state, [given]), qp.beta)
    else:
        base = _grid_for(state, grid)
        wp = symplectic_tomogram(state, perp, base.scaled(r))
        wg = symplectic_tomogram(state, given, base.scaled(r))
        lp = math.log(renyi_integral(wp, qp.alpha))
        lg = math.log(renyi_integral(wg, qp.beta))
    params = {"theta": theta, "q": qp.q}
    if name == "symplectic_renyi":
        params["r"] = r
    return InequalityReport.build(
        name, params, _renyi_pair_lhs(qp, lp, lg),
        renyi_rhs(qp, 1) + 2.0 * math.log(r), _tolerance(state, tolerance))


def check_multimode_renyi(state, frames, q, variant="symplectic", tolerance=None,
                          grids=None) -> InequalityReport:
    """N-mode Renyi relation on joint tomograms.

    ``variant='optical'`` rescales every frame to unit radius first.
    """
    if variant not in ("optical", "symplectic"):
        raise InvalidInputError(f"variant must be 'optical' or 'symplectic', got {variant!r}")
    frames = list(frames)
    n = getattr(state, "n_modes", 1)
    if len(frames) != n:
        raise WrongArityError(f"{len(frames)} frames for a {n}-mode state")
    if any(f.r == 0.0 for f in frames):
        raise DegenerateFrameError("frame with mu = nu = 0")
    if variant == "optical":
        frames = [_unit(f.theta) for f in frames]
    perp = [f.quarter_turn() for f in frames]
    qp = _qp(q)
    if isinstance(state, GaussianStateSpec):
        lp = gaussian_log_renyi_integral(projected_covariance(state, perp), qp.alpha)
        lg = gaussian_log_renyi_integral(projected_covariance(state, frames), qp.beta)
    else:
        wp = multimode_tomogram(state, perp, grids).density
        wg = multimode_tomogram(state, frames, grids).density
        lp = math.log(renyi_integral(wp, qp.alpha))
        lg = math.log(renyi_integral(wg, qp.beta))
    radial = 2.0 * sum(math.log(f.r) for f in frames)
    params = {"q": qp.q, "N": n, "variant": variant,
              "frames": [[f.mu, f.nu] for f in frames]}
    return InequalityReport.build(
        "multimode_renyi", params, _renyi_pair_lhs(qp, lp, lg),
        renyi_rhs(qp, n) + radial, _tolerance(state, tolerance, multimode=True))


def sweep_reports(state, theta_grid, q_grid, variants, r=1.0, tolerance=None, grid=None):
    """Every requested check over the theta and q grids.

    Order: variant-major, then theta, then q.  Checks that do not depend
    on theta (or q) are evaluated once per remaining parameter.
    """
    theta_grid = [float(t) for t in theta_grid]
    q_grid = [float(q) for q in q_grid]
    variants = list(variants)
    if not theta_grid or not q_grid or not variants:
        raise InvalidInputError("theta grid, q grid and variant list must be non-empty")
    unknown = [v for v in variants if v not in CHECKS]
    if unknown:
        raise InvalidInputError(f"unknown checks {unknown}; choose from {list(CHECKS)}")
    n = getattr(state, "n_modes", 1)

    def run(variant, theta, q):
        if variant == "shannon_pm":
            return check_shannon_position_momentum(state, tolerance=tolerance)
        if variant == "optical_shannon":
            return check_optical_shannon(state, theta, tolerance, grid)
        if variant == "renyi_pm":
            return check_renyi_position_momentum(state, q, tolerance)
        if variant == "optical_renyi":
            return check_optical_renyi(state, theta, q, tolerance, grid)
        if variant == "symplectic_renyi":
            return check_symplectic_renyi(state, r, theta, q, tolerance, grid)
        frames = [SymplecticFrame.polar(r, theta)] * n
        kind = "optical" if variant == "multimode_optical_renyi" else "symplectic"
        return check_multimode_renyi(state, frames, q, kind, tolerance)

    reports = []
    for variant in variants:
        thetas = theta_grid if variant in _USES_THETA else [None]
        qs = q_grid if variant in _USES_Q else [None]
        for theta in thetas:
            for q in qs:
                try:
                    reports.append(run(variant, theta, q))
                except TomolabError as exc:
                    raise type(exc)(f"{variant} (theta={theta}, q={q}): {exc}") from exc
    return reports
