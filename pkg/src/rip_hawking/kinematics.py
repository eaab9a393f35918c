"""Physical constants and the lab <-> pulse frame transforms.

Angular frequency (rad/s) is the working unit throughout the package;
wavelengths only appear at I/O boundaries.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

C = 2.99792458e8  # m/s
HBAR = 1.054571817e-34  # J s
K_B = 1.380649e-23  # J/K
# Wien displacement constant as printed (2.9e-3 m K), not CODATA 2.897771955e-3.
WIEN_B = 2.9e-3


def lorentz_gamma(v):
    """Lorentz factor 1/sqrt(1 - v^2/c^2) for 0 <= v < c."""
    v = np.asarray(v, dtype=float)
    if np.any(v < 0) or np.any(v >= C):
        raise DomainError(f"pulse speed must satisfy 0 <= v < c, got {v}")
    # C - v is exact for v > C/2, so no digits are lost near the light speed
    g = C / np.sqrt((C - v) * (C + v))
    return float(g) if g.ndim == 0 else g


@dataclass(frozen=True)
class FrameKinematics:
    """Uniform motion of the perturbation at speed ``v`` along +x."""

    v: float
    c: float = C

    def __post_init__(self):
        if self.c != C:
            raise DomainError("c is fixed to the SI value")
        if not (0.0 <= self.v < self.c):
            raise DomainError(f"pulse speed must satisfy 0 <= v < c, got {self.v}")

    @classmethod
    def from_c_over_v(cls, c_over_v):
        if c_over_v <= 1.0:
            raise DomainError(f"c/v must exceed 1, got {c_over_v}")
        return cls(C / c_over_v)

    @property
    def beta(self):
        return self.v / self.c

    @property
    def gamma(self):
        return lorentz_gamma(self.v)

    @property
    def c_over_v(self):
        return self.c / self.v if self.v > 0 else np.inf


def doppler_to_comoving(omega_l, theta, kin, n0):
    """Pulse-frame frequency of a lab mode emitted at angle ``theta``.

    omega = omega_l * gamma * (1 - (v/c) n0 cos(theta))
    """
    omega_l = np.asarray(omega_l, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if np.any(omega_l < 0):
        raise DomainError("omega_l must be non-negative")
    if np.any(theta < 0) or np.any(theta > np.pi):
        raise DomainError("theta must lie in [0, pi]")
    out = omega_l * kin.gamma * (1.0 - kin.beta * n0 * np.cos(theta))
    return float(out) if out.ndim == 0 else out


def boost_wave(omega, k_x, kin, direction="lab_to_pulse"):
    """Boost a plane wave (omega, k_x) along x.

    ``pulse_to_lab``: omega_l = gamma (omega + v k_x), k_xl = gamma (k_x + v omega / c^2).
    ``lab_to_pulse`` is the inverse (v -> -v).
    """
    if direction == "pulse_to_lab":
        v = kin.v
    elif direction == "lab_to_pulse":
        v = -kin.v
    else:
        raise ValueError(f"unknown boost direction {direction!r}")
    g = kin.gamma
    omega = np.asarray(omega, dtype=float)
    k_x = np.asarray(k_x, dtype=float)
    w = g * (omega + v * k_x)
    k = g * (k_x + v * omega / C**2)
    if w.ndim == 0:
        return float(w), float(k)
    return w, k


def wien_peak(T):
    """Angular frequency 2 pi c T / b of the Wien wavelength maximum."""
    T = np.asarray(T, dtype=float)
    if np.any(T <= 0):
        raise DomainError("temperature must be positive")
    out = 2.0 * np.pi * C * T / WIEN_B
    return float(out) if out.ndim == 0 else out


def omega_to_wavelength(omega):
    return 2.0 * np.pi * C / np.asarray(omega, dtype=float)


def wavelength_to_omega(lam):
    return 2.0 * np.pi * C / np.asarray(lam, dtype=float)
