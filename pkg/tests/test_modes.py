import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rip_hawking.errors import (
    DomainError,
    HorizonSingularError,
    ResonantIndicialError,
    SeriesConvergenceError,
)
from rip_hawking.horizons import find_horizons
from rip_hawking.kinematics import C, FrameKinematics
from rip_hawking.modes import (
    ModeSpec,
    frobenius_exponents,
    frobenius_series,
    near_horizon_phase,
    ode_oracle,
    propagation_bound,
    singularity_radius,
    thermality_exponent,
    wkb_ku_roots,
    wkb_phase,
)
from rip_hawking.profiles import GaussianProfile, ShockwaveProfile


def kin_for_nb(nb, n=1.45):
    return FrameKinematics(nb * C / n)


def test_ku_roots_half():
    kin = kin_for_nb(0.5)
    r = wkb_ku_roots(-1e6, 0.0, 1.45, kin)
    assert r.propagating
    assert r.k_u_plus == pytest.approx(3e6, rel=1e-12)
    assert r.k_u_minus == pytest.approx(1e6 / 3, rel=1e-12)


def test_propagation_threshold():
    kin = kin_for_nb(0.5)
    assert propagation_bound(1.45, kin) == pytest.approx(4 / 3, rel=1e-12)
    assert wkb_ku_roots(-1e6, 1e6, 1.45, kin).propagating
    assert wkb_ku_roots(-1e6, 1.15e6, 1.45, kin).propagating
    ev = wkb_ku_roots(-1e6, 1.2e6, 1.45, kin)
    assert not ev.propagating and ev.k_u_plus == ev.k_u_minus > 0
    assert math.sqrt(propagation_bound(1.45, kin)) == pytest.approx(1.1547, abs=1e-4)


def test_bound_grows_near_horizon():
    bounds = [propagation_bound(1.45, kin_for_nb(nb)) for nb in (0.9, 0.99, 0.999, 0.9999)]
    assert all(a < b for a, b in zip(bounds, bounds[1:]))
    assert wkb_ku_roots(-1e6, 1e8, 1.45, kin_for_nb(0.99999)).propagating
    assert propagation_bound(1.45, FrameKinematics.from_c_over_v(1.40)) == math.inf


def test_ku_errors():
    kin = kin_for_nb(0.5)
    with pytest.raises(DomainError):
        wkb_ku_roots(0.0, 0.0, 1.45, kin)
    with pytest.raises(DomainError):
        wkb_ku_roots(-1.0, 0.0, 0.0, kin)
    kin = FrameKinematics(C / 2.0)
    with pytest.raises(HorizonSingularError):
        wkb_ku_roots(-1.0, 0.0, 2.0, kin)


@given(st.floats(0.05, 0.999), st.floats(1e3, 1e8))
def test_root_product_identity(nb, kw):
    r = wkb_ku_roots(-kw, 0.0, 1.45, kin_for_nb(nb))
    assert r.k_u_plus * r.k_u_minus == pytest.approx(kw * kw, rel=1e-9)


def test_regular_root_vanishes_singular_root_diverges():
    minus, plus = [], []
    for eps in (1e-2, 1e-3, 1e-4):
        r = wkb_ku_roots(-1e6, 0.0, 1.45, kin_for_nb(1 - eps))
        minus.append(r.k_u_minus)
        plus.append(r.k_u_plus * eps / 2e6)
    assert all(a > b for a, b in zip(minus, minus[1:]))
    assert minus[-1] < 1e-4 * 1e6
    assert plus[-1] == pytest.approx(1.0, rel=1e-3)


@settings(max_examples=200)
@given(st.floats(1e12, 1e17), st.floats(0.0, math.pi / 2 - 1e-3))
def test_out_mode_convention(omega_l, theta):
    kin = FrameKinematics.from_c_over_v(1.4505)
    m = ModeSpec.from_lab(omega_l, theta, kin, 1.45)
    ku = m.k_u(kin)
    assert m.k_w < 0 and m.k_xl > 0 and ku > -m.k_w
    assert kin.v * (ku - m.k_w) == pytest.approx(omega_l, rel=1e-12)
    assert ku + m.k_w == pytest.approx(m.k_xl, rel=1e-9, abs=1e-9 * ku)
    lhs = 1.45**2 * omega_l**2
    rhs = (m.k_xl**2 + m.k_perp**2) * C**2
    assert lhs == pytest.approx(rhs, rel=1e-12)


def test_mode_spec_validation():
    kin = FrameKinematics.from_c_over_v(1.4505)
    with pytest.raises(DomainError):
        ModeSpec(k_w=-1.0, k_perp=-1.0)
    with pytest.raises(DomainError):
        ModeSpec.from_lab(-1.0, 0.0, kin, 1.45)
    with pytest.raises(DomainError):
        ModeSpec(k_w=-1.0).k_u(kin)


def slope_profile():
    """Gaussian with v = 2e8 m/s and n'(u_+) = gamma dn/dx(x_+) = -100 /m."""
    kin = FrameKinematics(2e8)
    k, eta = 0.5, 1e-3
    sigma = kin.gamma * eta * k * math.sqrt(2 * math.log(2)) / 100.0
    return GaussianProfile(kin.c_over_v - k * eta, eta, sigma), kin


def test_sigma_b_example():
    prof, kin = slope_profile()
    rep = find_horizons(prof, kin)
    assert kin.gamma * prof.dn_dx(rep.x_plus) == pytest.approx(-100.0, rel=1e-9)
    mode = ModeSpec(k_w=-1e6)
    sigma, phase = near_horizon_phase(rep.u_plus + 1e-9, mode, prof, kin)
    assert sigma == pytest.approx(2.99792e4, rel=1e-5)
    assert phase == pytest.approx(sigma * math.log(1e-9), rel=1e-12)
    a1, a2 = frobenius_exponents(mode, prof, kin)
    assert a1 == 0 and a2.real == 1.0
    assert a2.imag == pytest.approx(2.99792e4, rel=1e-5)


def test_sigma_b_sign_and_identity(gauss, kin):
    rng = np.random.default_rng(2)
    for _ in range(50):
        mode = ModeSpec(k_w=-(10 ** rng.uniform(0, 8)), k_perp=10 ** rng.uniform(0, 6))
        u_p = find_horizons(gauss, kin).u_plus
        sigma, _ = near_horizon_phase(u_p * 1.01, mode, gauss, kin)
        assert sigma > 0
        assert frobenius_exponents(mode, gauss, kin)[1].imag == sigma
        assert thermality_exponent(mode.k_w, gauss, kin) == sigma


def test_alpha2_tends_to_one(gauss, kin):
    a2 = [frobenius_exponents(ModeSpec(k_w=-kw), gauss, kin)[1] for kw in (1.0, 1e-3, 1e-6)]
    assert abs(a2[-1] - 1.0) < 1e-6


def test_near_horizon_behind_raises(gauss, kin):
    u_p = find_horizons(gauss, kin).u_plus
    with pytest.raises(DomainError):
        near_horizon_phase(u_p * 0.9, ModeSpec(k_w=-1.0), gauss, kin)


def test_wkb_phase_log_limit(gauss, kin):
    u_p = find_horizons(gauss, kin).u_plus
    R = singularity_radius(gauss, kin)
    mode = ModeSpec(k_w=-1e6, k_perp=1e5)
    sigma, _ = near_horizon_phase(u_p * 1.01, mode, gauss, kin)
    errs = []
    for eps in (1e-3, 1e-5, 1e-7):
        e = eps * R
        errs.append(abs(wkb_phase(u_p + e, u_p + 2 * e, mode, gauss, kin) - sigma * math.log(2)))
    assert errs[0] > errs[1] > errs[2]
    assert errs[-1] < 1e-5 * sigma


def test_radius_reference(gauss, kin):
    rep = find_horizons(gauss, kin)
    assert singularity_radius(gauss, kin) == pytest.approx(abs(rep.u_plus - rep.u_minus), rel=1e-12)


def test_frobenius_residual_and_normalisation(gauss, kin):
    for mode in (ModeSpec(k_w=-100.0), ModeSpec(k_w=-300.0, k_perp=2e4)):
        sols = frobenius_series(mode, gauss, kin, N=20)
        rep = find_horizons(gauss, kin)
        for s in sols:
            assert s.coefficients[0] == 1
            assert len(s.coefficients) == 20
            u = rep.u_plus + 0.1 * s.radius * np.exp(1j * np.linspace(0, 2 * np.pi, 16))
            assert np.max(s.residual(u)) < 1e-8


def test_frobenius_default_meets_half_radius(gauss, kin):
    sols = frobenius_series(ModeSpec(k_w=-100.0, k_perp=1e4), gauss, kin)
    rep = find_horizons(gauss, kin)
    for s in sols:
        u = rep.u_plus + 0.5 * s.radius * np.exp(1j * np.linspace(0, 2 * np.pi, 32))
        assert np.max(s.residual(u)) < 1e-8


def test_frobenius_alpha1_regular(gauss, kin):
    s1, s2 = frobenius_series(ModeSpec(k_w=-100.0), gauss, kin, N=20)
    rep = find_horizons(gauss, kin)
    u = rep.u_plus + 1e-12 * s1.radius
    assert abs(s1.evaluate(u) - 1.0) < 1e-6
    assert np.isfinite(s1.derivative(u))


def test_frobenius_phase_gradient(gauss, kin):
    mode = ModeSpec(k_w=-100.0)
    _, s2 = frobenius_series(mode, gauss, kin, N=20)
    sigma = thermality_exponent(mode.k_w, gauss, kin)
    rep = find_horizons(gauss, kin)
    d = 1e-6 * s2.radius
    u = rep.u_plus + d
    grad = (s2.derivative(u) / s2.evaluate(u)).imag
    assert grad * d == pytest.approx(sigma, rel=1e-4)


def test_frobenius_vs_ode(gauss, kin):
    for mode in (ModeSpec(k_w=-100.0), ModeSpec(k_w=-300.0, k_perp=2e4)):
        rep = find_horizons(gauss, kin)
        for s in frobenius_series(mode, gauss, kin):
            u0 = rep.u_plus + 0.05 * s.radius
            u1 = rep.u_plus + 0.4 * s.radius
            a, _ = ode_oracle(mode, gauss, kin, u0, u1, (s.evaluate(u0), s.derivative(u0)))
            assert abs(a - s.evaluate(u1)) < 1e-7 * abs(s.evaluate(u1))


def test_frobenius_shockwave():
    prof = ShockwaveProfile(1.45, 5e-3, 1e-5, 1e-6, 1e-6)
    kin = FrameKinematics.from_c_over_v(1.4525)
    rep = find_horizons(prof, kin)
    R = singularity_radius(prof, kin)
    assert 0 < R < abs(rep.u_plus - rep.u_minus)
    for s in frobenius_series(ModeSpec(k_w=-10.0), prof, kin):
        u = rep.u_plus + 0.5 * R * np.exp(1j * np.linspace(0, 2 * np.pi, 16))
        assert np.max(s.residual(u)) < 1e-8


def test_resonant_indicial(gauss, kin):
    with pytest.raises(ResonantIndicialError):
        frobenius_series(ModeSpec(k_w=0.0), gauss, kin, N=5)


def test_large_sigma_does_not_converge(gauss, kin):
    with pytest.raises(SeriesConvergenceError):
        frobenius_series(ModeSpec(k_w=-1e4), gauss, kin)


def test_frobenius_needs_analytic_profile():
    from rip_hawking.profiles import TabulatedProfile

    x = np.linspace(-5e-5, 5e-5, 201)
    tab = TabulatedProfile(1.45, 1e-3, x=tuple(x), samples=tuple(np.exp(-x**2 / 2e-10)))
    with pytest.raises(DomainError):
        frobenius_series(ModeSpec(k_w=-100.0), tab, FrameKinematics.from_c_over_v(1.4505))


def test_ode_crossing_raises(gauss, kin):
    rep = find_horizons(gauss, kin)
    with pytest.raises(DomainError):
        ode_oracle(ModeSpec(k_w=-1.0), gauss, kin, 0.0, 2 * rep.u_plus, (1, 0))


def test_ode_plane_wave_far_from_pulse(gauss):
    # a slow pulse keeps both roots comparable so the integrator is not stiff
    kin = FrameKinematics.from_c_over_v(2.0)
    mode = ModeSpec(k_w=-1e6, k_perp=3e5)
    ku = wkb_ku_roots(mode.k_w, mode.k_perp, gauss.n0, kin).k_u_minus
    u0 = 40 * gauss.sigma / kin.gamma
    span = 100 * 2 * math.pi / ku
    a, da = ode_oracle(mode, gauss, kin, u0, u0 + span, (1.0, 1j * ku))
    assert abs(abs(a) - 1.0) < 1e-9
    assert (da / a).imag == pytest.approx(ku, rel=1e-4)
    # same check on the slope of the phase via a short step
    a2, _ = ode_oracle(mode, gauss, kin, u0, u0 + span + 1e-9, (1.0, 1j * ku))
    slope = cmath.phase(a2 / a) / 1e-9
    assert slope == pytest.approx(ku, rel=1e-4)
