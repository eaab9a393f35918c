"""Observable spectra: dispersive Planck density and the windowed emission table."""

import math
from dataclasses import asdict, dataclass

import numpy as np

from .bogoliubov import occupation
from .dispersion import group_window, phase_window
from .errors import DomainError
from .greybody import greybody_lab
from .horizons import find_horizons, temperature_lab
from .kinematics import C, HBAR, K_B

SPECTRUM_FIELDS = (
    "omega_l",
    "theta",
    "T_lab",
    "greybody",
    "occupation",
    "in_phase_window",
    "in_group_window",
    "rho",
)


def planck_density_dispersive(omega, T, material):
    """Spectral energy density per unit omega in a dispersive medium (J s / m^3).

    rho = hbar omega^3 / (pi^2 c^2) * (n^2 / v_g) / (exp(hbar omega / k_b T) - 1),
    with v_g = c / (n + omega dn/domega).
    """
    if np.any(np.asarray(T) <= 0):
        raise DomainError("temperature must be positive")
    w = np.asarray(omega, dtype=float)
    n = np.asarray(material.index(w))
    ng = np.asarray(material.group_index(w))
    if np.any(ng <= 0):
        raise DomainError("group velocity is not positive (anomalous dispersion)")
    with np.errstate(over="ignore"):
        out = HBAR * w**3 / (math.pi**2 * C**2) * (n * n * ng / C) / np.expm1(HBAR * w / (K_B * T))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class SpectrumRow:
    omega_l: float
    theta: float
    T_lab: float
    greybody: float
    occupation: float
    in_phase_window: bool
    in_group_window: bool
    rho: float

    def to_dict(self):
        return asdict(self)


def emission_spectrum(profile, kin, material, theta, omega_grid):
    """One :class:`SpectrumRow` per lab frequency at emission angle ``theta``.

    Every row carries its thermal occupation; the window flags say whether
    the dispersive medium lets a horizon form at that frequency.
    """
    rep = find_horizons(profile, kin)
    T = temperature_lab(rep.T_pulse, theta, kin, profile.n0)
    pw = phase_window(material, profile.eta, kin.v)
    gw = group_window(material, profile.eta, kin.v)
    rows = []
    for w in np.asarray(omega_grid, dtype=float):
        gb = greybody_lab(w, theta, None, kin, profile.n0)
        try:
            rho = planck_density_dispersive(w, T, material)
        except DomainError:
            rho = math.nan
        rows.append(
            SpectrumRow(
                omega_l=float(w),
                theta=float(theta),
                T_lab=T,
                greybody=gb,
                occupation=occupation(w, T, gb),
                in_phase_window=bool(pw.contains(w)),
                in_group_window=bool(gw.contains(w)),
                rho=rho,
            )
        )
    return rows


def emitted(rows, gate="phase"):
    """Rows inside the chosen window ("phase" or "group")."""
    if gate not in ("phase", "group"):
        raise ValueError(f"unknown gate {gate!r}")
    key = "in_phase_window" if gate == "phase" else "in_group_window"
    return [r for r in rows if getattr(r, key)]
