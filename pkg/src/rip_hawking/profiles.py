"""Shapes of the moving refractive-index perturbation.

Every profile gives the normalised intensity I(x) in [0, 1] with peak 1 and
the index n(x) = n0 + eta * I(x), where x is the pulse-frame coordinate.
Gaussian and shockwave shapes are analytic and accept complex ``x``; the
tabulated shape is real-only.
"""

import csv
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import DomainError

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def _asout(a):
    a = np.asarray(a)
    return a.item() if a.ndim == 0 else a


@dataclass(frozen=True)
class RipProfile:
    n0: float
    eta: float

    analytic = False

    def __post_init__(self):
        if not self.n0 >= 1.0:
            raise DomainError(f"background index must be >= 1, got {self.n0}")
        if not self.eta > 0.0:
            raise DomainError(f"perturbation height must be positive, got {self.eta}")

    def _intensity(self, x):
        raise NotImplementedError

    def _intensity_dx(self, x):
        raise NotImplementedError

    def intensity(self, x):
        return _asout(self._intensity(np.asarray(x)))

    def intensity_dx(self, x):
        return _asout(self._intensity_dx(np.asarray(x)))

    def refractive_index(self, x):
        return _asout(self.n0 + self.eta * self._intensity(np.asarray(x)))

    def dn_dx(self, x):
        return _asout(self.eta * self._intensity_dx(np.asarray(x)))

    @property
    def x_peak(self):
        return 0.0

    def scan_interval(self):
        """Interval that contains every point where I(x) is non-negligible."""
        raise NotImplementedError


@dataclass(frozen=True)
class GaussianProfile(RipProfile):
    sigma: float = 1e-5

    analytic = True

    def __post_init__(self):
        super().__post_init__()
        if not self.sigma > 0:
            raise DomainError("sigma must be positive")

    def _intensity(self, x):
        return np.exp(-(x * x) / (2.0 * self.sigma**2))

    def _intensity_dx(self, x):
        return -(x / self.sigma**2) * self._intensity(x)

    def scan_interval(self):
        return (-8.0 * self.sigma, 8.0 * self.sigma)


def _one_minus_tanh(a):
    """1 - tanh(a) without cancellation for large positive a."""
    a = np.asarray(a, dtype=float)
    out = np.empty_like(a)
    pos = a >= 0
    e = np.exp(-2.0 * a[pos])
    out[pos] = 2.0 * e / (1.0 + e)
    out[~pos] = 2.0 / (1.0 + np.exp(2.0 * a[~pos]))
    return out


def _shock_deficit(x, sigma, d_wh, d_bh):
    """2 - H(x), accurate where H is within rounding of 2."""
    ea = _one_minus_tanh((sigma + x) / d_wh)
    eb = _one_minus_tanh((sigma - x) / d_bh)
    return ea + eb - ea * eb


def _shock_h(x, sigma, d_wh, d_bh):
    return 1.0 + np.tanh((sigma + x) / d_wh) * np.tanh((sigma - x) / d_bh)


def _shock_h_dx(x, sigma, d_wh, d_bh):
    ta = np.tanh((sigma + x) / d_wh)
    tb = np.tanh((sigma - x) / d_bh)
    return (1.0 - ta * ta) * tb / d_wh - ta * (1.0 - tb * tb) / d_bh


def shock_max(profile):
    """Location and value of max_x H(x) for a shockwave profile.

    Golden-section search on log(2 - H) over [-sigma - 10 d_wh, sigma + 10 d_bh],
    checked against a coarse grid; falls back to a dense grid if the search
    landed on a secondary maximum.
    """
    s, dw, db = profile.sigma, profile.delta_wh, profile.delta_bh
    lo, hi = -s - 10.0 * dw, s + 10.0 * db

    def objective(x):
        d = float(_shock_deficit(np.array([x]), s, dw, db)[0])
        return math.log(d) if d > 0 else -math.inf

    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = objective(c), objective(d)
    for _ in range(200):
        if b - a <= 1e-15 * max(abs(a), abs(b), s):
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = objective(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = objective(d)
    x_best = 0.5 * (a + b)

    grid = np.linspace(lo, hi, 10_001)
    deficit = _shock_deficit(grid, s, dw, db)
    if deficit.min() < float(_shock_deficit(np.array([x_best]), s, dw, db)[0]) * (1 - 1e-9):
        # multimodal: refine on a dense grid around the coarse argmax
        i = int(np.argmin(deficit))
        fine = np.linspace(grid[max(i - 1, 0)], grid[min(i + 1, grid.size - 1)], 100_001)
        x_best = float(fine[np.argmin(_shock_deficit(fine, s, dw, db))])
    h_max = 2.0 - float(_shock_deficit(np.array([x_best]), s, dw, db)[0])
    return x_best, h_max


@dataclass(frozen=True)
class ShockwaveProfile(RipProfile):
    """H(x) = 1 + tanh((sigma + x)/d_wh) tanh((sigma - x)/d_bh), normalised by max H."""

    sigma: float = 1e-5
    delta_wh: float = 1e-6
    delta_bh: float = 1e-6
    _x_max: float = field(init=False, repr=False, compare=False, default=0.0)
    _h_max: float = field(init=False, repr=False, compare=False, default=2.0)

    analytic = True

    def __post_init__(self):
        super().__post_init__()
        if not (self.sigma > 0 and self.delta_wh > 0 and self.delta_bh > 0):
            raise DomainError("sigma, delta_wh and delta_bh must be positive")
        x_max, h_max = shock_max(self)
        object.__setattr__(self, "_x_max", x_max)
        object.__setattr__(self, "_h_max", h_max)

    @property
    def x_peak(self):
        return self._x_max

    @property
    def h_max(self):
        return self._h_max

    def _intensity(self, x):
        return _shock_h(x, self.sigma, self.delta_wh, self.delta_bh) / self._h_max

    def _intensity_dx(self, x):
        return _shock_h_dx(x, self.sigma, self.delta_wh, self.delta_bh) / self._h_max

    def scan_interval(self):
        half = max(8.0 * self.sigma, self.sigma + 20.0 * max(self.delta_wh, self.delta_bh))
        return (-half, half)

    def tanh_poles(self, m_max=2):
        """Complex x where either tanh factor has a pole."""
        poles = []
        for m in range(-m_max, m_max):
            z = 1j * math.pi * (m + 0.5)
            poles.append(-self.sigma + self.delta_wh * z)
            poles.append(self.sigma - self.delta_bh * z)
        return poles


@dataclass(frozen=True)
class TabulatedProfile(RipProfile):
    """Measured intensity samples, interpolated by a monotone cubic.

    Samples are rescaled to peak 1. Outside the table I = 0 and dI/dx = 0.
    """

    x: tuple = ()
    samples: tuple = ()
    _interp: object = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        super().__post_init__()
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.samples, dtype=float)
        if x.ndim != 1 or x.size < 4 or x.shape != y.shape:
            raise DomainError("need at least four (x, intensity) samples")
        if np.any(np.diff(x) <= 0):
            raise DomainError("x samples must be strictly increasing")
        if np.any(y < 0) or y.max() <= 0:
            raise DomainError("intensities must be non-negative with a positive peak")
        y = y / y.max()
        if max(y[0], y[-1]) > 1e-3:
            warnings.warn("tabulated profile does not decay at the table edges", stacklevel=3)
        interior = (y[1:-1] > y[:-2]) & (y[1:-1] >= y[2:])
        if interior.sum() > 1:
            warnings.warn("tabulated profile has more than one local maximum", stacklevel=3)
        object.__setattr__(self, "x", tuple(x))
        object.__setattr__(self, "samples", tuple(y))
        object.__setattr__(self, "_interp", PchipInterpolator(x, y, extrapolate=False))

    @classmethod
    def from_csv(cls, path, n0, eta):
        """Load ``x_meters, intensity`` rows; a non-numeric first row is a header."""
        xs, ys = [], []
        with Path(path).open(newline="") as fh:
            for i, row in enumerate(csv.reader(fh)):
                if not row or not "".join(row).strip():
                    continue
                try:
                    xv, yv = float(row[0]), float(row[1])
                except ValueError:
                    if i == 0:
                        continue
                    raise
                xs.append(xv)
                ys.append(yv)
        return cls(n0=n0, eta=eta, x=tuple(xs), samples=tuple(ys))

    @property
    def x_peak(self):
        return self.x[int(np.argmax(self.samples))]

    def _intensity(self, x):
        if np.iscomplexobj(x):
            raise DomainError("tabulated profiles are real-only")
        out = self._interp(np.asarray(x, dtype=float))
        return np.nan_to_num(out, nan=0.0)

    def _intensity_dx(self, x):
        if np.iscomplexobj(x):
            raise DomainError("tabulated profiles are real-only")
        out = self._interp(np.asarray(x, dtype=float), 1)
        return np.nan_to_num(out, nan=0.0)

    def scan_interval(self):
        return (self.x[0], self.x[-1])
