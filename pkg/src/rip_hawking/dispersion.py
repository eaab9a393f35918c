"""Frequency-dependent background index and the dispersive horizon windows.

The RIP is taken to add the same eta * I(x) to the index at every frequency,
n(omega, u) = n0(omega) + eta * I(gamma u). A phase-velocity horizon at lab
frequency omega needs n(omega, u) = c/v somewhere, i.e.
c/v - eta <= n0(omega) < c/v; the group-velocity horizon uses the group index.
"""

import json
import math
from collections import namedtuple
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError
from .kinematics import C, lorentz_gamma

KxWindow = namedtuple("KxWindow", "k_min k_max omega_l_sign")
Branch = namedtuple("Branch", "omega branch_id v_group v_phase")


def _out(a):
    a = np.asarray(a)
    return float(a) if a.ndim == 0 else a


class _Material:
    def group_index(self, omega):
        """n + omega dn/domega."""
        return _out(self.index(omega) + np.asarray(omega) * self.dn_domega(omega))


class _Unbounded(_Material):
    def validity(self):
        return (0.0, math.inf)

    def check(self, omega):
        if np.any(np.asarray(omega) < 0):
            raise DomainError("omega must be non-negative")


@dataclass(frozen=True)
class ConstantIndex(_Unbounded):
    n0: float
    name: str = "constant"

    def index(self, omega):
        self.check(omega)
        return _out(np.full_like(np.asarray(omega, dtype=float), self.n0))

    def dn_domega(self, omega):
        self.check(omega)
        return _out(np.zeros_like(np.asarray(omega, dtype=float)))


@dataclass(frozen=True)
class CauchyMaterial(_Unbounded):
    """n0(omega) = n0 + B0 omega^2 with B0 > 0 in s^2."""

    n0: float
    B0: float
    name: str = "cauchy"

    def __post_init__(self):
        if not self.B0 > 0:
            raise DomainError("Cauchy coefficient B0 must be positive (normal dispersion)")

    def index(self, omega):
        self.check(omega)
        w = np.asarray(omega, dtype=float)
        return _out(self.n0 + self.B0 * w * w)

    def dn_domega(self, omega):
        self.check(omega)
        return _out(2.0 * self.B0 * np.asarray(omega, dtype=float))


@dataclass(frozen=True)
class SingleResonance(_Material):
    """n^2 = 1 + omega_c^2 / (omega_0^2 - omega^2); no solutions for omega_0 <= omega <= omega_L."""

    omega0: float
    omegac: float
    name: str = "single_resonance"

    @property
    def omega_L(self):
        return math.hypot(self.omega0, self.omegac)

    def validity(self):
        return (0.0, self.omega0)

    def check(self, omega):
        w = np.asarray(omega, dtype=float)
        if np.any(w < 0) or np.any((w >= self.omega0) & (w <= self.omega_L)):
            raise DomainError("omega lies in the forbidden band [omega_0, omega_L]")

    def index(self, omega):
        self.check(omega)
        w = np.asarray(omega, dtype=float)
        return _out(np.sqrt(1.0 + self.omegac**2 / (self.omega0**2 - w * w)))

    def dn_domega(self, omega):
        w = np.asarray(omega, dtype=float)
        n = np.asarray(self.index(w))
        return _out(self.omegac**2 * w / ((self.omega0**2 - w * w) ** 2 * n))


@dataclass(frozen=True)
class MultiSellmeier(_Material):
    """n^2 = 1 + sum_i B_i lambda^2 / (lambda^2 - lambda_i^2), lambda in metres."""

    B: tuple
    lambdas: tuple
    lambda_range: tuple = (0.0, math.inf)
    name: str = "sellmeier"

    def validity(self):
        lo, hi = self.lambda_range
        return (2.0 * math.pi * C / hi if hi < math.inf else 0.0,
                2.0 * math.pi * C / lo if lo > 0 else math.inf)

    def check(self, omega):
        lo, hi = self.validity()
        w = np.asarray(omega, dtype=float)
        if np.any(w < lo) or np.any(w > hi):
            raise DomainError(f"omega outside the material's tabulated range [{lo:.4e}, {hi:.4e}]")

    def _n2_and_slope(self, lam):
        lam2 = lam * lam
        n2 = np.ones_like(lam)
        dn2 = np.zeros_like(lam)
        for b, li in zip(self.B, self.lambdas):
            d = lam2 - li * li
            n2 = n2 + b * lam2 / d
            dn2 = dn2 - 2.0 * b * lam * li * li / (d * d)
        return n2, dn2

    def index(self, omega):
        self.check(omega)
        lam = 2.0 * math.pi * C / np.asarray(omega, dtype=float)
        return _out(np.sqrt(self._n2_and_slope(lam)[0]))

    def dn_domega(self, omega):
        self.check(omega)
        w = np.asarray(omega, dtype=float)
        lam = 2.0 * math.pi * C / w
        n2, dn2 = self._n2_and_slope(lam)
        # dn/domega = (dn/dlambda)(dlambda/domega), dlambda/domega = -lambda/omega
        return _out(dn2 / (2.0 * np.sqrt(n2)) * (-lam / w))


def index_at(material, omega_l):
    return material.index(omega_l)


def cauchy_from_sellmeier(material):
    """Low-frequency Cauchy fit of a single resonance: B0 = omega_c^2 / (2 n0 omega_0^4)."""
    n0 = math.sqrt(1.0 + (material.omegac / material.omega0) ** 2)
    return CauchyMaterial(n0=n0, B0=material.omegac**2 / (2.0 * n0 * material.omega0**4))


def quartic_branches(material, k_mag):
    """Both positive solutions of omega^4 - (omega_L^2 + k^2c^2) omega^2 + omega_0^2 k^2 c^2 = 0."""
    if k_mag < 0:
        raise DomainError("k must be non-negative")
    kc2 = (k_mag * C) ** 2
    s = material.omega_L**2 + kc2
    disc = (material.omega_L**2 - kc2) ** 2 + 4.0 * material.omegac**2 * kc2
    assert disc >= 0.0
    root = math.sqrt(disc)
    w_plus2 = 0.5 * (s + root)
    w_minus2 = 2.0 * material.omega0**2 * kc2 / (s + root)
    return math.sqrt(w_minus2), math.sqrt(w_plus2)


def dispersive_index(material, profile, omega_l, u, kin):
    """n0(omega_l) + eta I(gamma u)."""
    return material.index(omega_l) + profile.eta * np.asarray(profile.intensity(kin.gamma * np.asarray(u)))


@dataclass(frozen=True)
class SpectralWindow:
    """Half-open lab frequency band [omega_min, omega_max)."""

    kind: str
    omega_min: float
    omega_max: float
    empty: bool = False

    @classmethod
    def none(cls, kind):
        return cls(kind, math.nan, math.nan, True)

    @property
    def lambda_min(self):
        return 2.0 * math.pi * C / self.omega_max if not self.empty else math.nan

    @property
    def lambda_max(self):
        if self.empty:
            return math.nan
        return 2.0 * math.pi * C / self.omega_min if self.omega_min > 0 else math.inf

    @property
    def lambda_center(self):
        return 0.5 * (self.lambda_min + self.lambda_max)

    @property
    def lambda_width(self):
        return self.lambda_max - self.lambda_min

    def contains(self, omega):
        if self.empty:
            return np.zeros_like(np.asarray(omega, dtype=bool)) if np.ndim(omega) else False
        w = np.asarray(omega)
        out = (w >= self.omega_min) & (w < self.omega_max)
        return bool(out) if out.ndim == 0 else out

    def to_dict(self):
        return {
            "kind": self.kind,
            "omega_min_rad_s": self.omega_min,
            "omega_max_rad_s": self.omega_max,
            "lambda_min_m": self.lambda_min,
            "lambda_max_m": self.lambda_max,
            "empty": self.empty,
        }


def _cauchy_window(material, eta, v, factor, kind):
    c_over_v = C / v
    d = c_over_v - material.n0
    if d <= 0:
        return SpectralWindow.none(kind)
    hi = math.sqrt(d / (factor * material.B0))
    lo = math.sqrt((d - eta) / (factor * material.B0)) if eta < d else 0.0
    return SpectralWindow(kind, lo, hi)


def phase_window_lab(material, eta, v):
    """Cauchy phase window: c/v - eta <= n0 + B0 omega^2 < c/v."""
    return _cauchy_window(material, eta, v, 1.0, "phase")


def group_window_lab(material, eta, v):
    """Cauchy group window: c/v - eta <= n0 + 3 B0 omega^2 < c/v."""
    return _cauchy_window(material, eta, v, 3.0, "group")


def _band(fn, level_lo, level_hi, omega_lo, omega_hi, kind, samples=4096):
    """{omega : level_lo <= fn(omega) < level_hi} on the normally dispersive part of the range.

    Only the highest-frequency stretch where ``fn`` increases is used, so a
    group index with a minimum (zero-dispersion point) is handled on its
    visible-side branch.
    """
    grid = np.linspace(omega_lo, omega_hi, samples)
    vals = np.asarray(fn(grid))
    falling = np.nonzero(np.diff(vals) <= 0)[0]
    if falling.size:
        start = falling[-1] + 1
        if start >= samples - 2:
            raise DomainError("index is not increasing on the validity range (anomalous dispersion)")
        grid, vals = grid[start:], vals[start:]
        omega_lo = grid[0]

    def cross(level):
        if level <= vals[0]:
            return omega_lo
        if level > vals[-1]:
            return math.inf
        i = int(np.searchsorted(vals, level))
        return brentq(lambda w: float(fn(w)) - level, grid[i - 1], grid[i], xtol=1e-300, rtol=1e-15)

    lo, hi = cross(level_lo), cross(level_hi)
    if lo == math.inf or hi <= omega_lo or hi <= lo:
        return SpectralWindow.none(kind)
    return SpectralWindow(kind, lo, min(hi, omega_hi))


def _general_window(material, eta, v, which):
    if isinstance(material, CauchyMaterial):
        return (phase_window_lab if which == "phase" else group_window_lab)(material, eta, v)
    c_over_v = C / v
    lo, hi = material.validity()
    if isinstance(material, ConstantIndex):
        n = material.n0
        if c_over_v - eta <= n < c_over_v:
            return SpectralWindow(which, 0.0, math.inf)
        return SpectralWindow.none(which)
    fn = material.index if which == "phase" else material.group_index
    hi = hi if hi < math.inf else 1e18
    # stay a hair inside open validity edges
    lo_eval = lo if lo > 0 else hi * 1e-9
    hi_eval = hi * (1.0 - 1e-9)
    return _band(fn, c_over_v - eta, c_over_v, lo_eval, hi_eval, which)


def phase_window(material, eta, v):
    """Phase window for any normally dispersive material (bracketed root finding)."""
    return _general_window(material, eta, v, "phase")


def group_window(material, eta, v):
    """Group window for any normally dispersive material (bracketed root finding)."""
    return _general_window(material, eta, v, "group")


def horizons_coexist(material, eta, v):
    """Phase and group windows overlap iff eta >= (2/3)(c/v - n0).

    The boundary is closed; c/v itself carries rounding, so a few ulp of
    slack are allowed.
    """
    c_over_v = C / v
    return eta >= (2.0 / 3.0) * (c_over_v - material.n0) - 4.0 * np.finfo(float).eps * c_over_v


def comoving_kx_windows(material, eta, v):
    """Pulse-frame k_x intervals of the phase window (bounds divided by gamma v)."""
    w = phase_window_lab(material, eta, v)
    if w.empty:
        return []
    gv = lorentz_gamma(v) * v
    lo, hi = w.omega_min / gv, w.omega_max / gv
    if w.omega_min > 0:
        return [KxWindow(-hi, -lo, -1), KxWindow(lo, hi, 1)]
    return [KxWindow(-hi, hi, 0)]


def _real_cubic_root(p, q):
    """The real root of W^3 + p W + q = 0 for p > 0."""
    if q == 0:
        return 0.0
    r = math.sqrt(p / 3.0)
    w = -2.0 * r * math.sinh(math.asinh(1.5 * q / (p * r)) / 3.0)
    for _ in range(2):
        f = w * (w * w + p) + q
        w -= f / (3.0 * w * w + p)
    return w


def _check_pair(material, profile):
    if abs(material.n0 - profile.n0) > 1e-12 * profile.n0:
        raise DomainError("material and profile disagree on the background index n0")


def comoving_branches(material, profile, kin, k_x, x):
    """Pulse-frame frequencies solving D+ = 0 and D- = 0 at (k_x, x), k_perp = 0.

    With W = omega + v k_x the two factors read
    B0 gamma^2 W^3 + (n(x) +- v/c) W +- c k_x / gamma^2 = 0; each has one real root.
    """
    _check_pair(material, profile)
    n = profile.refractive_index(x)
    g, b, v = kin.gamma, kin.beta, kin.v
    B0 = getattr(material, "B0", 0.0)
    out = []
    for sign, label in ((1.0, "D+"), (-1.0, "D-")):
        a1 = n + sign * b
        if B0 == 0.0:
            W = -sign * C * k_x / (g * g * a1)
        else:
            W = _real_cubic_root(a1 / (B0 * g * g), sign * C * k_x / (g**4 * B0))
        omega = W - v * k_x
        m = 3.0 * B0 * g * g * W * W
        d_omega = g * (m + n + sign * b)
        d_k = g * (v * (m + n) + sign * C)
        vp = omega / k_x if k_x != 0 else math.nan
        out.append(Branch(omega, label, -d_k / d_omega, vp))
    return out


def group_horizon_kx(material, profile, kin, omega, x):
    """k_x where dD-/dk_x = 0 at pulse frequency ``omega``; None when n(x) > c/v."""
    _check_pair(material, profile)
    rad = kin.c_over_v - profile.refractive_index(x)
    if rad < 0:
        return None
    s = math.sqrt(rad) / (kin.gamma * kin.v * math.sqrt(3.0 * material.B0))
    base = -omega / kin.v
    return [base - s, base + s]


def material_from_dict(d):
    kind = d["kind"]
    coeffs = d.get("coefficients", {})
    name = d.get("name", kind)
    if kind == "constant":
        return ConstantIndex(coeffs["n0"], name=name)
    if kind == "cauchy":
        return CauchyMaterial(coeffs["n0"], B0=coeffs["B0_s2"], name=name)
    if kind == "single_resonance":
        return SingleResonance(coeffs["omega0_rad_s"], coeffs["omegac_rad_s"], name=name)
    if kind == "sellmeier":
        rng = d.get("validity_nm") or (0.0, math.inf)
        return MultiSellmeier(
            tuple(coeffs["B"]),
            tuple(l * 1e-6 for l in coeffs["lambda_um"]),
            lambda_range=(rng[0] * 1e-9, rng[1] * 1e-9),
            name=name,
        )
    raise DomainError(f"unknown material kind {kind!r}")


def load_material(name_or_path):
    """Load a preset by name (e.g. "fused_silica_malitson") or a JSON file path."""
    p = Path(name_or_path)
    if p.suffix == ".json" and p.exists():
        text = p.read_text()
    else:
        res = resources.files("rip_hawking") / "materials" / f"{name_or_path}.json"
        if not res.is_file():
            raise DomainError(f"unknown material {name_or_path!r}")
        text = res.read_text()
    return material_from_dict(json.loads(text))
