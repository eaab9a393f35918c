"""Modes of the field in retarded/advanced variables u = x_l - v t_l, w = x_l + v t_l.

With Phi = A(u) exp(i k_w w + i k_perp . y) the mode equation is

    A'' + 2 i k_w (c^2 + n^2 v^2)/(c^2 - n^2 v^2) A'
        - (k_w^2 + k_perp^2 / (1 - n^2 v^2/c^2)) A = 0,

with n = n(gamma u). Both coefficients have a simple pole at each horizon.
This module gives the WKB roots, the logarithmic phase at the black-hole
horizon, the Frobenius series there, and a Runge-Kutta integrator that
serves as an independent check.
"""

import math
from collections import namedtuple
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.integrate import quad, solve_ivp

from .errors import (
    DomainError,
    HorizonSingularError,
    ResonantIndicialError,
    SeriesConvergenceError,
    StiffnessError,
)
from .horizons import find_horizons, horizon_exists
from .kinematics import C
from .profiles import GaussianProfile, ShockwaveProfile

KuRoots = namedtuple("KuRoots", "k_u_plus k_u_minus propagating")

_CAUCHY_NODES = 512
_CAUCHY_RHO = 0.75
_RESIDUAL_TOL = 1e-8
_POLE_SAFETY = 0.9


@dataclass(frozen=True)
class ModeSpec:
    """Conserved numbers of a mode plus the lab observables when known."""

    k_w: float
    k_perp: float = 0.0
    omega_l: float | None = None
    k_xl: float | None = None
    theta: float | None = None

    def __post_init__(self):
        if self.k_perp < 0:
            raise DomainError("k_perp is a magnitude and must be non-negative")

    @classmethod
    def from_lab(cls, omega_l, theta, kin, n0):
        """Out mode emitted at lab frequency ``omega_l`` and angle ``theta`` far from the pulse."""
        if omega_l <= 0:
            raise DomainError("omega_l must be positive")
        if not 0.0 <= theta <= math.pi:
            raise DomainError("theta must lie in [0, pi]")
        k = n0 * omega_l / C
        k_xl = k * math.cos(theta)
        k_w = 0.5 * (k_xl - omega_l / kin.v)
        return cls(k_w=k_w, k_perp=k * math.sin(theta), omega_l=omega_l, k_xl=k_xl, theta=theta)

    def k_u(self, kin):
        """Asymptotic k_u = (k_xl + omega_l/v)/2, when the lab data are set."""
        if self.omega_l is None or self.k_xl is None:
            raise DomainError("lab frequency and wavenumber are not set for this mode")
        return 0.5 * (self.k_xl + self.omega_l / kin.v)


def wkb_ku_roots(k_w, k_perp, n, kin):
    """Local WKB wavenumbers k_u for index ``n``.

    Evanescent modes (negative radicand) return the common modulus of the
    complex-conjugate pair for both roots and ``propagating=False``.
    """
    if n <= 0:
        raise DomainError("index must be positive")
    if k_w == 0:
        raise DomainError("k_w must be non-zero")
    nb = n * kin.beta
    if nb == 1.0:
        raise HorizonSingularError("n v / c = 1: the k_u+ root diverges at the horizon")
    d = (1.0 - nb) * (1.0 + nb)
    rad = 1.0 - (k_perp / k_w) ** 2 * d / (4.0 * nb * nb)
    if rad >= 0:
        s = 2.0 * nb * math.sqrt(rad)
        return KuRoots(-k_w / d * (1.0 + nb * nb + s), -k_w / d * (1.0 + nb * nb - s), True)
    mag = abs(k_w) / abs(d) * math.sqrt((1.0 + nb * nb) ** 2 + 4.0 * nb * nb * (-rad))
    return KuRoots(mag, mag, False)


def propagation_bound(n, kin):
    """Largest propagating (k_perp/k_w)^2, 4 N^2/(1 - N^2) with N = n v/c."""
    nb = n * kin.beta
    d = (1.0 - nb) * (1.0 + nb)
    return math.inf if d <= 0 else 4.0 * nb * nb / d


def _excess(profile, kin, x):
    """n(x) - c/v written as eta (I(x) - k) to keep digits near the horizon."""
    k = (kin.c_over_v - profile.n0) / profile.eta
    return profile.eta * (np.asarray(profile.intensity(x)) - k)


def _horizon_slope(profile, kin):
    rep = find_horizons(profile, kin)
    return rep, kin.gamma * profile.dn_dx(rep.x_plus)


def thermality_exponent(k_w, profile, kin):
    """sigma_b = 2 c k_w / (v n'(u_+)), with n'(u) = gamma dn/dx."""
    _, slope = _horizon_slope(profile, kin)
    return 2.0 * C * k_w / (kin.v * slope)


def near_horizon_phase(u, mode, profile, kin):
    """(sigma_b, sigma_b ln(u - u_+)): the leading phase of the singular out mode."""
    rep, slope = _horizon_slope(profile, kin)
    if u <= rep.u_plus:
        raise DomainError("u must lie outside the black-hole horizon (u > u_+)")
    sigma = 2.0 * C * mode.k_w / (kin.v * slope)
    return sigma, sigma * math.log(u - rep.u_plus)


def wkb_phase(u1, u2, mode, profile, kin):
    """Integral of the singular root k_u+ over [u1, u2], both outside u_+.

    Integrated in s = ln(u - u_+) so the 1/(u - u_+) growth is harmless.
    """
    rep = find_horizons(profile, kin)
    if min(u1, u2) <= rep.u_plus:
        raise DomainError("interval must lie outside the black-hole horizon")
    b = kin.beta
    c_over_v = kin.c_over_v
    g = kin.gamma

    def integrand(s):
        du = math.exp(s)
        x = g * (rep.u_plus + du)
        delta = float(_excess(profile, kin, x))
        n = c_over_v + delta
        one_minus = -delta * b
        d = one_minus * (1.0 + n * b)
        nb = n * b
        rad = 1.0 - (mode.k_perp / mode.k_w) ** 2 * d / (4.0 * nb * nb)
        ku = -mode.k_w / d * (1.0 + nb * nb + 2.0 * nb * math.sqrt(rad))
        return ku * du

    s1, s2 = math.log(u1 - rep.u_plus), math.log(u2 - rep.u_plus)
    val, _ = quad(integrand, s1, s2, epsabs=0.0, epsrel=1e-10, limit=500)
    return val


def frobenius_exponents(mode, profile, kin):
    """Indicial roots (0, 1 + i sigma_b) at u_+."""
    sigma = thermality_exponent(mode.k_w, profile, kin)
    return 0j, 1.0 + 1j * sigma


def singularity_radius(profile, kin):
    """Distance from u_+ to the nearest other singular point of the mode equation.

    Includes u_-, complex zeros of c^2 - n^2 v^2 and, for the shockwave,
    the poles of tanh (scaled by a 0.9 safety factor).
    """
    rep = find_horizons(profile, kin)
    g = kin.gamma
    r = abs(rep.u_plus - rep.u_minus)
    if isinstance(profile, GaussianProfile):
        x_p = rep.x_plus
        for sign in (1.0, -1.0):
            level = complex((sign * kin.c_over_v - profile.n0) / profile.eta)
            for m in range(-3, 4):
                w = -2.0 * profile.sigma**2 * (np.log(level) + 2j * math.pi * m)
                for root in (np.sqrt(w), -np.sqrt(w)):
                    if abs(root - x_p) > 1e-9 * profile.sigma:
                        r = min(r, abs(root - x_p) / g)
    elif isinstance(profile, ShockwaveProfile):
        for pole in profile.tanh_poles():
            r = min(r, _POLE_SAFETY * abs(pole - rep.x_plus) / g)
    else:
        raise DomainError("Frobenius series needs an analytic profile")
    return r


def _coefficient_functions(mode, profile, kin, u_plus, radius):
    """p(z), q(z) of z A'' + p A' + q A = 0 with z = (u - u_+)/radius."""
    b, g = kin.beta, kin.gamma
    kw, kp = mode.k_w, mode.k_perp
    c_over_v = kin.c_over_v

    def pq(z):
        z = np.asarray(z, dtype=complex)
        du = radius * z
        delta = _excess(profile, kin, g * (u_plus + du))
        nb = (c_over_v + delta) * b
        d = (-delta * b) * (1.0 + nb)  # 1 - n^2 v^2 / c^2
        p = du * 2j * kw * (1.0 + nb * nb) / d
        q = radius * du * -(kw * kw + kp * kp / d)
        return p, q

    return pq


def _taylor(func_values, rho):
    m = func_values.shape[-1]
    coeffs = np.fft.fft(func_values, axis=-1) / m
    return coeffs / rho ** np.arange(m)


@dataclass(frozen=True)
class FrobeniusSolution:
    """A(u) = z^alpha sum_n c_n z^n with z = (u - u_+)/radius.

    Coefficients are stored in powers of the dimensionless ``z`` so that
    high orders stay finite; ``radius`` (m) is the disc of validity.
    """

    alpha: complex
    coefficients: tuple
    radius: float
    u_plus: float
    _pq: object = None

    def _z(self, u):
        return (np.asarray(u, dtype=complex) - self.u_plus) / self.radius

    def series(self, z):
        c = np.asarray(self.coefficients)
        return P.polyval(z, c), P.polyval(z, P.polyder(c)), P.polyval(z, P.polyder(c, 2))

    def evaluate(self, u):
        z = self._z(u)
        s, _, _ = self.series(z)
        return z**self.alpha * s

    def derivative(self, u):
        z = self._z(u)
        s, s1, _ = self.series(z)
        return z ** (self.alpha - 1) * (self.alpha * s + z * s1) / self.radius

    def residual(self, u):
        """Relative residual of the mode equation at ``u`` (complex allowed)."""
        z = self._z(u)
        a = self.alpha
        s, s1, s2 = self.series(z)
        p, q = self._pq(z)
        terms = (a * (a - 1) * s, 2 * a * z * s1, z * z * s2, p * a * s, p * z * s1, z * q * s)
        total = sum(terms)
        scale = sum(np.abs(t) for t in terms)
        return np.abs(total) / scale


def _recursion(alpha, p, q, n_terms):
    c = np.zeros(n_terms, dtype=complex)
    c[0] = 1.0
    p0 = p[0]
    for n in range(1, n_terms):
        f1, f2 = alpha + n, alpha + n - 1 + p0
        tol = 1e-12 * (n + abs(alpha) + abs(p0))
        if abs(f1) <= tol or abs(f2) <= tol:
            raise ResonantIndicialError(f"indicial pivot vanishes at order {n}")
        pivot = f1 * f2
        r = np.arange(n)
        acc = np.sum(((alpha + r) * p[n - r] + q[n - r - 1]) * c[:n])
        c[n] = -acc / pivot
    return c


def frobenius_series(mode, profile, kin, N=None, check_at=0.5):
    """Both Frobenius solutions (alpha_1 = 0, alpha_2 = 1 + i sigma_b) about u_+.

    Taylor coefficients of p and q come from a Cauchy integral on the circle
    |z| = 0.75 evaluated with the analytic continuation of the profile. With
    ``N=None`` the truncation starts at 20 terms and grows by 20 up to 60
    until the residual at |z| = ``check_at`` is below 1e-8.
    """
    rep = find_horizons(profile, kin)
    radius = singularity_radius(profile, kin)
    pq = _coefficient_functions(mode, profile, kin, rep.u_plus, radius)
    zs = _CAUCHY_RHO * np.exp(2j * np.pi * np.arange(_CAUCHY_NODES) / _CAUCHY_NODES)
    pv, qv = pq(zs)
    p, q = _taylor(pv, _CAUCHY_RHO), _taylor(qv, _CAUCHY_RHO)
    alphas = frobenius_exponents(mode, profile, kin)

    probe = check_at * np.exp(2j * np.pi * (np.arange(8) + 0.5) / 8)
    sizes = [N] if N is not None else [20, 40, 60]
    for n_terms in sizes:
        if n_terms < 1:
            raise DomainError("N must be at least 1")
        sols = tuple(
            FrobeniusSolution(a, tuple(_recursion(a, p, q, n_terms)), radius, rep.u_plus, pq)
            for a in alphas
        )
        worst = max(float(np.max(s.residual(rep.u_plus + radius * probe))) for s in sols)
        if N is not None or worst < _RESIDUAL_TOL:
            return sols
    raise SeriesConvergenceError(
        f"series residual {worst:.3e} at |z|={check_at} after {sizes[-1]} terms"
    )


def mode_coefficients(mode, profile, kin, u):
    """Raw coefficients (P, Q) of A'' + P A' + Q A = 0 at real ``u``."""
    b = kin.beta
    delta = _excess(profile, kin, kin.gamma * np.asarray(u, dtype=float))
    nb = (kin.c_over_v + delta) * b
    d = (-delta * b) * (1.0 + nb)
    pc = 2j * mode.k_w * (1.0 + nb * nb) / d
    qc = -(mode.k_w**2 + mode.k_perp**2 / d)
    return pc, qc


def ode_oracle(mode, profile, kin, u_start, u_end, initial, rtol=1e-10):
    """Integrate the mode equation from ``u_start`` to ``u_end`` with DOP853.

    ``initial`` is (A, dA/du) at ``u_start``; returns (A, dA/du) at ``u_end``.
    """
    lo, hi = min(u_start, u_end), max(u_start, u_end)
    if horizon_exists(profile, kin):
        rep = find_horizons(profile, kin)
        for uh in (rep.u_plus, rep.u_minus):
            if lo <= uh <= hi:
                raise DomainError(f"integration interval contains the singular point u={uh:.6g}")

    def rhs(u, y):
        pc, qc = mode_coefficients(mode, profile, kin, u)
        return [y[1], -pc * y[1] - qc * y[0]]

    y0 = np.array(initial, dtype=complex)
    scale = max(abs(y0[0]), abs(y0[1]) * (hi - lo), 1e-300)
    sol = solve_ivp(rhs, (u_start, u_end), y0, method="DOP853", rtol=rtol,
                    atol=[1e-14 * scale, 1e-14 * scale / max(hi - lo, 1e-300)])
    if sol.status != 0:
        raise StiffnessError(f"integration failed: {sol.message}")
    return complex(sol.y[0, -1]), complex(sol.y[1, -1])
