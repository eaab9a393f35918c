import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rip_hawking.errors import DomainError
from rip_hawking.kinematics import (
    C,
    WIEN_B,
    FrameKinematics,
    boost_wave,
    doppler_to_comoving,
    lorentz_gamma,
    omega_to_wavelength,
    wavelength_to_omega,
    wien_peak,
)


def test_gamma_rest_and_345():
    assert lorentz_gamma(0.0) == 1.0
    assert lorentz_gamma(0.6 * C) == pytest.approx(1.25, rel=1e-15)


def test_gamma_reference_against_mpmath():
    mpmath.mp.dps = 40
    ref = 1 / mpmath.sqrt(1 - 1 / mpmath.mpf("1.4505") ** 2)
    g = lorentz_gamma(C / 1.4505)
    assert g == pytest.approx(float(ref), rel=1e-14)
    assert round(g, 6) == 1.380521


@pytest.mark.parametrize("v", [-1.0, C, 2 * C])
def test_gamma_domain(v):
    with pytest.raises(DomainError):
        lorentz_gamma(v)


@given(st.floats(0.0, 0.999999 * C))
def test_gamma_identity(v):
    # the oracle root is taken in extended precision; a float sqrt(1 - b^2) loses digits near c
    mpmath.mp.dps = 40
    b = mpmath.mpf(v) / mpmath.mpf(C)
    assert float(lorentz_gamma(v) * mpmath.sqrt(1 - b * b)) == pytest.approx(1.0, abs=1e-14)


def test_frame_kinematics():
    k = FrameKinematics.from_c_over_v(1.4505)
    assert k.c_over_v == pytest.approx(1.4505, rel=1e-15)
    assert k.gamma == lorentz_gamma(k.v)
    with pytest.raises(DomainError):
        FrameKinematics(C)
    with pytest.raises(DomainError):
        FrameKinematics.from_c_over_v(0.9)


def test_doppler_examples():
    rest = FrameKinematics(0.0)
    assert doppler_to_comoving(3e15, 1.0, rest, 1.45) == 3e15
    k = FrameKinematics.from_c_over_v(1.4505)
    assert doppler_to_comoving(3e15, math.pi / 2, k, 1.45) == pytest.approx(k.gamma * 3e15, rel=1e-15)
    assert doppler_to_comoving(2.5e15, 0.0, k, 1.45) == pytest.approx(1.1898e12, rel=1e-4)
    # 1 - (v/c) n0 = k eta / (n0 + k eta)
    assert 1 - 1.45 / 1.4505 == pytest.approx(0.5e-3 / 1.4505, rel=1e-9)


def test_doppler_domain():
    k = FrameKinematics.from_c_over_v(1.4505)
    with pytest.raises(DomainError):
        doppler_to_comoving(-1.0, 0.0, k, 1.45)
    with pytest.raises(DomainError):
        doppler_to_comoving(1.0, 4.0, k, 1.45)


def test_boost_trivial_cases():
    rest = FrameKinematics(0.0)
    assert boost_wave(2.0, 3.0, rest) == (2.0, 3.0)
    k = FrameKinematics(0.5 * C)
    w, _ = boost_wave(0.0, 7.0, k, "pulse_to_lab")
    assert w == pytest.approx(k.gamma * k.v * 7.0, rel=1e-15)
    with pytest.raises(ValueError):
        boost_wave(1.0, 1.0, k, "sideways")


def test_boost_round_trip_random():
    rng = np.random.default_rng(1)
    for _ in range(1000):
        v = rng.uniform(0, 0.99) * C
        k = FrameKinematics(v)
        w, kx = rng.uniform(-1e16, 1e16), rng.uniform(-1e8, 1e8)
        w2, kx2 = boost_wave(*boost_wave(w, kx, k, "lab_to_pulse"), k, "pulse_to_lab")
        scale_w, scale_k = abs(w) + v * abs(kx), abs(kx) + v * abs(w) / C**2
        assert abs(w2 - w) <= 1e-13 * k.gamma**2 * scale_w
        assert abs(kx2 - kx) <= 1e-13 * k.gamma**2 * scale_k


@settings(max_examples=200)
@given(st.floats(0.0, math.pi), st.floats(1e13, 1e16))
def test_doppler_matches_boost(theta, omega_l):
    k = FrameKinematics.from_c_over_v(1.4505)
    n0 = 1.45
    w_boost, _ = boost_wave(omega_l, n0 * omega_l * math.cos(theta) / C, k, "lab_to_pulse")
    w_direct = doppler_to_comoving(omega_l, theta, k, n0)
    assert w_direct == pytest.approx(w_boost, rel=1e-9, abs=1e-12 * omega_l)


def test_wien():
    T = WIEN_B / 1e-6
    assert omega_to_wavelength(wien_peak(T)) == pytest.approx(1e-6, rel=1e-15)
    assert wien_peak(2900.0) == pytest.approx(1.8835e15, rel=1e-4)
    assert wien_peak(5800.0) == pytest.approx(2 * wien_peak(2900.0), rel=1e-15)
    with pytest.raises(DomainError):
        wien_peak(0.0)


def test_wavelength_round_trip():
    assert wavelength_to_omega(omega_to_wavelength(2.0e15)) == pytest.approx(2.0e15, rel=1e-15)
