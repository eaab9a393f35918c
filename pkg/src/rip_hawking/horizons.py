"""Pulse-frame metric, horizons, surface gravity and Hawking temperatures.

Three routes to the surface gravity are provided so they can check each
other: the Killing-vector form gamma^2 v^2 |dn/dx|, the acoustic-analogue
form c |d(c - v_tilde)/dx_tilde|, and the period of Euclidean time that
removes the conical singularity at the horizon.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, NoHorizonError, TangentHorizonError
from .kinematics import C, HBAR, K_B
from .profiles import GaussianProfile

SCAN_POINTS = 10_000
# hbar / (2 pi k_b c), K s^2 / m
_T_PER_KAPPA = HBAR / (2.0 * math.pi * K_B * C)


@dataclass(frozen=True)
class MetricSample:
    x: float
    g00: float
    g01: float
    g11: float
    g_tautau: float
    alpha: float


@dataclass(frozen=True)
class HorizonReport:
    x_plus: float
    x_minus: float
    u_plus: float
    u_minus: float
    kappa_plus: float
    T_pulse: float
    k_level: float
    inner_roots: tuple = field(default=())

    def to_dict(self):
        return {
            "x_plus_m": self.x_plus,
            "x_minus_m": self.x_minus,
            "kappa_plus_m_per_s2": self.kappa_plus,
            "T_pulse_K": self.T_pulse,
            "k_level": self.k_level,
        }


def metric_components(profile, kin, x):
    """Metric of the moving dielectric seen from the pulse frame at ``x``.

    At a horizon g00 vanishes and ``alpha`` is returned as a signed infinity.
    """
    n = profile.refractive_index(x)
    b, g2 = kin.beta, kin.gamma**2
    g00 = g2 * (C**2 / n**2) * (1.0 + n * b) * (1.0 - n * b)
    g01 = g2 * (kin.v / n**2) * (1.0 - n * n)
    g11 = -g2 * (1.0 + b / n) * (1.0 - b / n)
    g_tt = g2 * (1.0 + n * b) * (1.0 - n * b)
    if g00 == 0.0:
        alpha = math.copysign(math.inf, g01)
    else:
        alpha = g01 / g00
    return MetricSample(float(x), g00, g01, g11, g_tt, alpha)


def _is_tangent(profile, kin):
    top = profile.n0 + profile.eta
    return abs(kin.c_over_v - top) <= 4.0 * np.finfo(float).eps * top


def horizon_exists(profile, kin):
    """True iff 1/(n0 + eta) <= v/c < 1/n0 (tangency judged to a few ulp)."""
    cv = kin.c_over_v
    return profile.n0 < cv and (cv < profile.n0 + profile.eta or _is_tangent(profile, kin))


def _check_exists(profile, kin):
    if not horizon_exists(profile, kin):
        top = profile.n0 + profile.eta
        if kin.c_over_v > top:
            msg = f"no horizon: c/v exceeds n0+eta ({kin.c_over_v:.10g} > {top:.10g})"
        else:
            msg = f"no horizon: c/v does not exceed n0 ({kin.c_over_v:.10g} <= {profile.n0:.10g})"
        raise NoHorizonError(msg)
    if _is_tangent(profile, kin):
        raise TangentHorizonError("horizons coincide (c/v = n0 + eta)", x=profile.x_peak)


def gaussian_horizons(profile, kin):
    """Closed form x_+- = +-sigma sqrt(-2 ln k), k = (c/v - n0)/eta."""
    k = (kin.c_over_v - profile.n0) / profile.eta
    x = profile.sigma * math.sqrt(-2.0 * math.log(k))
    return x, -x


def scan_roots(profile, kin, n_points=SCAN_POINTS):
    """All roots of n(x) = c/v on the profile support, by grid scan plus bisection."""
    lo, hi = profile.scan_interval()
    xc = profile.x_peak
    lo, hi = min(lo, xc), max(hi, xc)
    grid = np.linspace(lo, hi, n_points)
    target = kin.c_over_v
    f = np.asarray(profile.refractive_index(grid)) - target
    roots = []
    for i in np.nonzero(np.sign(f[:-1]) * np.sign(f[1:]) < 0)[0]:
        r = brentq(lambda x: profile.refractive_index(x) - target, grid[i], grid[i + 1],
                   xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)
        roots.append(r)
    roots.extend(float(grid[i]) for i in np.nonzero(f == 0.0)[0])
    return sorted(roots)


def find_horizons(profile, kin, method="auto"):
    """Locate both horizons and summarise the black-hole one.

    ``method`` is "closed_form" (Gaussian only), "scan", or "auto".
    """
    _check_exists(profile, kin)
    inner = ()
    if method == "auto":
        method = "closed_form" if isinstance(profile, GaussianProfile) else "scan"
    if method == "closed_form":
        if not isinstance(profile, GaussianProfile):
            raise DomainError("closed-form horizons exist only for the Gaussian profile")
        x_plus, x_minus = gaussian_horizons(profile, kin)
    elif method == "scan":
        roots = scan_roots(profile, kin)
        falling = [r for r in roots if profile.dn_dx(r) < 0]
        rising = [r for r in roots if profile.dn_dx(r) > 0]
        if not falling or not rising:
            raise NoHorizonError("no horizon: n(x) never crosses c/v on the profile support")
        x_plus, x_minus = falling[-1], rising[0]
        inner = tuple(r for r in roots if r not in (x_plus, x_minus))
    else:
        raise ValueError(f"unknown method {method!r}")
    kappa = surface_gravity(profile, kin, x_plus)
    g = kin.gamma
    return HorizonReport(
        x_plus=x_plus,
        x_minus=x_minus,
        u_plus=x_plus / g,
        u_minus=x_minus / g,
        kappa_plus=kappa,
        T_pulse=temperature_pulse(kappa),
        k_level=float(profile.intensity(x_plus)),
        inner_roots=inner,
    )


def surface_gravity(profile, kin, x_h):
    """kappa = gamma^2 v^2 |dn/dx(x_h)|."""
    return kin.gamma**2 * kin.v**2 * abs(profile.dn_dx(x_h))


def surface_gravity_level(profile, x_h):
    """kappa = c^2 |dn/dx| / ((n0 + k eta)^2 - 1), using n(x_h) = c/v."""
    n_h = profile.refractive_index(x_h)
    return C**2 * abs(profile.dn_dx(x_h)) / (n_h**2 - 1.0)


def temperature_pulse(kappa):
    """T = hbar kappa / (2 pi k_b c)."""
    if kappa < 0:
        raise DomainError("surface gravity must be non-negative")
    return _T_PER_KAPPA * kappa


def temperature_lab(T_pulse, theta, kin, n0):
    """Lab temperature T_pulse / (gamma (1 - (v/c) n0 cos(theta)))."""
    if np.any(np.asarray(T_pulse) < 0):
        raise DomainError("temperature must be non-negative")
    d = 1.0 - kin.beta * n0 * np.cos(theta)
    if np.any(d <= 0):
        raise DomainError("(v/c) n0 cos(theta) >= 1: no finite lab temperature at this angle")
    out = T_pulse / (kin.gamma * d)
    return float(out) if np.ndim(out) == 0 else out


def acoustic_map(profile, kin, x):
    """Acoustic-analogue flow (v_tilde, c_tilde, Omega^2, dx_tilde/dx) at ``x``."""
    n = profile.refractive_index(x)
    g2, b = kin.gamma**2, kin.beta
    v_tilde = g2 * kin.v * (n * n - 1.0) / n
    omega2 = (1.0 / g2) / (n * n - b * b)
    dxt_dx = -g2 * (n * n - b * b) / n
    return v_tilde, C, omega2, dxt_dx


def surface_gravity_acoustic(profile, kin):
    """kappa = c |d(c - v_tilde)/dx| / |dx_tilde/dx| at the black-hole horizon."""
    x_h = find_horizons(profile, kin).x_plus
    n = profile.refractive_index(x_h)
    g2 = kin.gamma**2
    dv_dx = g2 * kin.v * (1.0 + 1.0 / n**2) * profile.dn_dx(x_h)
    _, c_t, _, dxt_dx = acoustic_map(profile, kin, x_h)
    return c_t * abs(dv_dx) / abs(dxt_dx)


def euclidean_period(profile, kin):
    """Period (in c*tau, metres) of Euclidean time regular at the horizon.

    Near x_+ the Euclidean section is a cone unless c*tau has period
    4 pi n(x_+) / |d g_tautau/dx|, with d g_tautau/dx = -2 gamma^2 n beta^2 dn/dx.
    """
    _check_exists(profile, kin)
    x_h = find_horizons(profile, kin).x_plus
    n = profile.refractive_index(x_h)
    dg = -2.0 * kin.gamma**2 * n * kin.beta**2 * profile.dn_dx(x_h)
    if dg == 0.0:
        raise TangentHorizonError("infinite Euclidean period at a degenerate horizon", x=x_h)
    return 4.0 * math.pi * n / abs(dg)


def temperature_from_period(beta_period):
    """T = hbar c / (k_b beta)."""
    if beta_period <= 0:
        raise DomainError("period must be positive")
    return HBAR * C / (K_B * beta_period)
