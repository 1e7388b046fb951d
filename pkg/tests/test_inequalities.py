import math

import numpy as np
import pytest

from tomolab import (
    DegenerateFrameError,
    InvalidInputError,
    InvalidParameterError,
    MultimodeProductState,
    SymplecticFrame,
    WrongArityError,
    check_multimode_renyi,
    check_optical_renyi,
    check_optical_shannon,
    check_renyi_position_momentum,
    check_shannon_position_momentum,
    check_symplectic_renyi,
    gaussian_vacuum,
    gaussian_wavefunction,
    renyi_rhs,
    sample_wavefunction,
    squeezed_vacuum,
    sweep_reports,
)
from tomolab.inequalities import CHECKS, QParameter

from conftest import LN_PI_E, ONE_PHOTON_ENTROPY, WIDE_GRID, random_fock

QS = (0.1, 0.3, 0.5, 0.7, 0.9)


def test_renyi_rhs_values():
    assert renyi_rhs(0.5, 1) == pytest.approx(2.099501, abs=1e-6)
    assert renyi_rhs(0.5, 2) == pytest.approx(4.199002, abs=1e-6)
    assert renyi_rhs(1e-3, 1) == pytest.approx(LN_PI_E, abs=1e-5)
    for bad in (0.0, 1.0, -0.2, 1.5):
        with pytest.raises(InvalidParameterError):
            renyi_rhs(bad, 1)
    with pytest.raises(InvalidParameterError):
        renyi_rhs(0.5, 0)


def test_conjugate_pair():
    qp = QParameter(0.5)
    assert (qp.alpha, qp.beta) == pytest.approx((2.0, 2 / 3))
    assert 1 / qp.alpha + 1 / qp.beta == pytest.approx(2.0)


def test_shannon_pm(vac, one, sq1):
    assert abs(check_shannon_position_momentum(vac).margin) < 1e-6
    rep = check_shannon_position_momentum(one)
    assert rep.margin == pytest.approx(2 * ONE_PHOTON_ENTROPY - LN_PI_E, abs=1e-6)
    assert rep.margin == pytest.approx(0.541093, abs=1e-3)
    assert abs(check_shannon_position_momentum(sq1).margin) < 1e-12
    with pytest.raises(WrongArityError):
        check_shannon_position_momentum(vac, n_modes=2)


@pytest.mark.parametrize("k", range(9))
def test_optical_shannon_saturation(vac, sq1, k):
    theta = k * math.pi / 8
    assert abs(check_optical_shannon(vac, theta).margin) <= 1e-4
    m = check_optical_shannon(sq1, theta).margin
    assert m >= -1e-6
    # closed form: ln(cosh^2 2 - sinh^2 2 cos^2 2theta) / 2
    ref = 0.5 * math.log(math.cosh(2) ** 2 - math.sinh(2) ** 2 * math.cos(2 * theta) ** 2)
    assert m == pytest.approx(ref, abs=1e-12)


def test_squeezed_quarter_angle_margin(sq1):
    assert check_optical_shannon(sq1, math.pi / 4).margin == pytest.approx(math.log(math.cosh(2)), abs=1e-12)


@pytest.mark.parametrize("q", QS)
def test_renyi_pm(vac, one, sq1, q):
    assert abs(check_renyi_position_momentum(vac, q).margin) < 1e-4
    assert abs(check_renyi_position_momentum(sq1, q).margin) < 1e-10
    assert check_renyi_position_momentum(one, q).margin > 0


@pytest.mark.parametrize("theta", [0.0, math.pi / 5, math.pi / 3])
@pytest.mark.parametrize("q", QS)
def test_optical_renyi_vacuum(vac, theta, q):
    rep = check_optical_renyi(vac, theta, q)
    assert abs(rep.margin) <= 1e-4
    assert rep.name == "optical_renyi"
    assert abs(check_optical_renyi(gaussian_vacuum(), theta, q).margin) <= 1e-12


@pytest.mark.parametrize("q", QS)
def test_non_gaussian_strict(one, plus, q):
    for theta in (0.0, 0.7, 2.0):
        assert check_optical_renyi(one, theta, q).margin > 0
        assert check_optical_renyi(plus, theta, q).margin > 0


def test_random_states_satisfy_relations(rng):
    for _ in range(4):
        s = random_fock(rng, 4)
        t = float(rng.uniform(0, 2 * math.pi))
        q = float(rng.uniform(0.05, 0.95))
        assert check_optical_shannon(s, t).satisfied
        assert check_optical_renyi(s, t, q).satisfied
        assert check_symplectic_renyi(s, 1.7, t, q).satisfied


@pytest.mark.parametrize("r", [0.5, 2.0, 3.0])
def test_symplectic_renyi_radial_term(vac, one, r):
    for q in (0.2, 0.6):
        assert abs(check_symplectic_renyi(vac, r, 0.4, q).margin) < 1e-4
        assert abs(check_symplectic_renyi(gaussian_vacuum(), r, 0.4, q).margin) < 1e-12
        base = check_optical_renyi(one, 0.4, q).margin
        assert check_symplectic_renyi(one, r, 0.4, q).margin == pytest.approx(base, abs=1e-6)
    assert check_symplectic_renyi(vac, r, 0.4, 0.5).rhs == pytest.approx(renyi_rhs(0.5) + 2 * math.log(r))
    with pytest.raises(DegenerateFrameError):
        check_symplectic_renyi(vac, 0.0, 0.4, 0.5)


def test_grid_state_paths(plus):
    psi = sample_wavefunction(plus)
    a = check_optical_renyi(psi, 0.9, 0.4).margin
    b = check_optical_renyi(plus, 0.9, 0.4).margin
    assert a == pytest.approx(b, abs=1e-8)


@pytest.mark.parametrize("q", [0.25, 0.5, 0.75])
def test_multimode_vacuum(vac, q):
    two = MultimodeProductState((vac, vac))
    frames = [SymplecticFrame(1, 0), SymplecticFrame.polar(1, 0.6)]
    rep = check_multimode_renyi(two, frames, q)
    assert abs(rep.margin) <= 1e-3
    assert rep.rhs == pytest.approx(renyi_rhs(q, 2))
    assert abs(check_multimode_renyi(gaussian_vacuum(2), frames, q).margin) <= 1e-10


@pytest.mark.parametrize("theta", [0.0, 0.5, 1.4])
def test_multimode_tmsv(tmsv, theta):
    f = [SymplecticFrame.polar(1, theta), SymplecticFrame.polar(1, -theta)]
    for q in QS:
        assert abs(check_multimode_renyi(tmsv, f, q).margin) <= 1e-10
    g = [SymplecticFrame.polar(1, theta), SymplecticFrame.polar(1, theta + 0.3)]
    m = check_multimode_renyi(tmsv, g, 0.5).margin
    ref = math.log(math.cosh(2) ** 2 - math.sinh(2) ** 2 * math.cos(2 * theta + 0.3) ** 2)
    assert m == pytest.approx(ref, abs=1e-10)


def test_multimode_optical_variant(tmsv):
    frames = [SymplecticFrame.polar(2.0, 0.1), SymplecticFrame.polar(0.5, -0.1)]
    rep = check_multimode_renyi(tmsv, frames, 0.5, variant="optical")
    assert rep.rhs == pytest.approx(renyi_rhs(0.5, 2))
    rep = check_multimode_renyi(tmsv, frames, 0.5, variant="symplectic")
    assert abs(rep.margin) < 1e-10
    with pytest.raises(InvalidInputError):
        check_multimode_renyi(tmsv, frames, 0.5, variant="other")
    with pytest.raises(WrongArityError):
        check_multimode_renyi(tmsv, frames[:1], 0.5)


def test_q_to_zero_limit(vac, one):
    for s in (vac, one):
        shannon = check_optical_shannon(s, 0.3).lhs
        assert abs(check_optical_renyi(s, 0.3, 1e-3).lhs - shannon) <= 5e-3


def test_sweep_order_and_counts(vac):
    thetas = np.linspace(0, math.pi, 8, endpoint=False)
    reps = sweep_reports(vac, thetas, QS, ["optical_renyi"])
    assert len(reps) == 40
    assert [(r.params["theta"], r.params["q"]) for r in reps[:6]] == [
        (0.0, 0.1), (0.0, 0.3), (0.0, 0.5), (0.0, 0.7), (0.0, 0.9), (thetas[1], 0.1)]
    assert max(abs(r.margin) for r in reps) <= 1e-4
    reps = sweep_reports(vac, thetas[:2], QS[:2], ["shannon_pm", "renyi_pm", "optical_shannon"])
    assert [r.name for r in reps] == ["shannon_pm", "renyi_pm", "renyi_pm",
                                      "optical_shannon", "optical_shannon"]


def test_sweep_errors(vac):
    with pytest.raises(InvalidInputError):
        sweep_reports(vac, [0.0], [0.5], ["nope"])
    with pytest.raises(InvalidInputError):
        sweep_reports(vac, [], [0.5], ["optical_renyi"])
    with pytest.raises(InvalidParameterError):
        sweep_reports(vac, [0.0], [1.2], ["optical_renyi"])
    assert set(CHECKS) >= {"shannon_pm", "multimode_renyi"}


def test_report_serializable(vac):
    d = check_optical_renyi(vac, 0.0, 0.5).to_dict()
    assert set(d) == {"name", "params", "lhs", "rhs", "margin", "satisfied", "tolerance"}
    assert d["satisfied"] is True


def test_wide_grid_squeezed_path(sq1):
    for theta in (0.0, math.pi / 4, math.pi / 2):
        rep = check_optical_shannon(gaussian_wavefunction(sq1, WIDE_GRID), theta)
        assert rep.margin == pytest.approx(check_optical_shannon(sq1, theta).margin, abs=1e-6)
