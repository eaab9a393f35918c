"""Greybody factor: transmission through the potential outside the black-hole horizon.

In the pulse frame a mode exp(i omega tau - i k_perp . y) obeys

    (p phi')' + omega^2 k phi - q phi = 0,   p = g/n, k = n/(c^2 g), q = k_perp^2/n,

with g = g_tautau. In the tortoise coordinate ds = n/(c g) dx this becomes
phi_ss + (omega^2 - Q) phi = 0. Because p k = 1/c^2 is constant the
transformation adds no extra term and Q = q/k = k_perp^2 c^2 g / n^2, which
rises from 0 at the horizon to Q_inf = gamma^2 k_perp^2 q0^2.
"""

import math
from collections import namedtuple
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad, solve_ivp
from scipy.optimize import brentq

from .errors import DomainError, InternalInconsistency, ResolutionError
from .horizons import find_horizons
from .kinematics import C

ScatteringResult = namedtuple("ScatteringResult", "transmission reflection k_left k_right n_points")

_EDGE_TOL = 1e-6


def _one_minus_nb2(profile, kin, x):
    """1 - n^2 v^2/c^2 with the horizon cancellation done analytically."""
    k = (kin.c_over_v - profile.n0) / profile.eta
    delta = profile.eta * (np.asarray(profile.intensity(x)) - k)
    nb = (kin.c_over_v + delta) * kin.beta
    return -delta * kin.beta * (1.0 + nb)


def _g_tautau(profile, kin, x):
    return kin.gamma**2 * _one_minus_nb2(profile, kin, x)


@dataclass(frozen=True)
class ScatteringProblem:
    """Exterior scattering for one transverse wavenumber."""

    profile: object
    kin: object
    k_perp: float
    x_plus: float = field(init=False)

    def __post_init__(self):
        if self.k_perp < 0:
            raise DomainError("k_perp must be non-negative")
        object.__setattr__(self, "x_plus", find_horizons(self.profile, self.kin).x_plus)

    @property
    def q0(self):
        """(c/n0) sqrt(1 - n0^2 v^2/c^2), in m/s."""
        n0 = self.profile.n0
        b = self.kin.beta
        return C / n0 * math.sqrt((1.0 - n0 * b) * (1.0 + n0 * b))

    @property
    def Q_inf(self):
        return (self.kin.gamma * self.k_perp * self.q0) ** 2


def tortoise(profile, kin, x, x_ref):
    """s(x) - s(x_ref) = int n / (c g_tautau) dx on the exterior x > x_+ (seconds)."""
    x_plus = find_horizons(profile, kin).x_plus
    if min(x, x_ref) <= x_plus:
        raise DomainError("tortoise coordinate diverges at the horizon; keep x, x_ref > x_+")

    # integrate in t = ln(x - x_+) so the 1/(x - x_+) growth is flat
    def f(t):
        d = math.exp(t)
        xx = x_plus + d
        return profile.refractive_index(xx) / (C * float(_g_tautau(profile, kin, xx))) * d

    t0, t1 = math.log(x_ref - x_plus), math.log(x - x_plus)
    val, _ = quad(f, t0, t1, epsabs=0.0, epsrel=1e-10, limit=200)
    return val


def potential_Q(problem, x):
    """Q = k_perp^2 c^2 g_tautau / n^2 in (rad/s)^2."""
    n = np.asarray(problem.profile.refractive_index(x))
    out = problem.k_perp**2 * C**2 * _g_tautau(problem.profile, problem.kin, x) / n**2
    return float(out) if np.ndim(out) == 0 else out


def step_transmission(omega, Q_inf, variant="physical"):
    """|T|^2 across a step of height Q_inf at frequency omega.

    ``physical``: 4 k1 k2 / (k1 + k2)^2 with k1 = omega, k2 = sqrt(omega^2 - Q_inf),
    zero below the step. ``paper_literal``: 4 omega sqrt(Q_inf) / (omega + sqrt(Q_inf))^2,
    taken as 1 when Q_inf = 0.
    """
    if not omega > 0:
        raise DomainError("omega must be positive")
    if Q_inf < 0:
        raise DomainError("Q_inf must be non-negative")
    if Q_inf == 0:
        return 1.0
    if variant == "physical":
        if omega * omega <= Q_inf:
            return 0.0
        k2 = math.sqrt((omega - math.sqrt(Q_inf)) * (omega + math.sqrt(Q_inf)))
        # 4ab/(a+b)^2 can round one ulp above 1 when a ~ b
        return min(1.0, 4.0 * omega * k2 / (omega + k2) ** 2)
    if variant == "paper_literal":
        r = math.sqrt(Q_inf)
        return min(1.0, 4.0 * omega * r / (omega + r) ** 2)
    raise ValueError(f"unknown variant {variant!r}")


def greybody_lab(omega_l, theta, k_perp, kin, n0, variant="physical"):
    """Step-barrier greybody factor for a lab mode (omega_l, theta).

    Pulse-frame omega = gamma omega_l (1 - n0 (v/c) cos theta) and
    Q_inf = gamma^2 k_perp^2 q0^2. ``k_perp=None`` takes it from the
    asymptotic dispersion relation, k_perp = n0 omega_l sin(theta) / c; then
    omega^2 - Q_inf = (gamma omega_l (cos theta - n0 v/c))^2 >= 0 identically
    and the factored form is used. An explicit ``k_perp`` that puts the mode
    below the barrier raises :class:`InternalInconsistency`.
    """
    if not omega_l > 0:
        raise DomainError("omega_l must be positive")
    b = kin.beta
    nb = n0 * b
    if nb >= 1.0:
        raise DomainError("n0 v/c >= 1: no exterior region")
    g = kin.gamma
    omega = g * omega_l * (1.0 - nb * math.cos(theta))
    root = math.sqrt((1.0 - nb) * (1.0 + nb))
    if k_perp is None:
        sqrt_q = g * omega_l * math.sin(theta) * root
        k2 = g * omega_l * abs(math.cos(theta) - nb)
    else:
        sqrt_q = g * k_perp * (C / n0) * root
        diff = (omega - sqrt_q) * (omega + sqrt_q)
        if diff < -1e-12 * omega * omega:
            raise InternalInconsistency(
                f"sub-barrier mode (omega^2 = {omega**2:.6e} < Q_inf = {sqrt_q**2:.6e}); "
                "k_perp is inconsistent with the asymptotic dispersion relation"
            )
        k2 = math.sqrt(max(diff, 0.0))
    if sqrt_q == 0.0:
        return 1.0
    if variant == "physical":
        return min(1.0, 4.0 * omega * k2 / (omega + k2) ** 2)
    if variant == "paper_literal":
        return min(1.0, 4.0 * omega * sqrt_q / (omega + sqrt_q) ** 2)
    raise ValueError(f"unknown variant {variant!r}")


def greybody_angular(theta, kin, n0):
    """Closed form 4ab/(a+b)^2, a = 1 - n0 (v/c) cos theta, b = |n0 v/c - cos theta|."""
    theta = np.asarray(theta, dtype=float)
    nb = n0 * kin.beta
    a = 1.0 - nb * np.cos(theta)
    b = np.abs(nb - np.cos(theta))
    out = np.minimum(1.0, 4.0 * a * b / (a + b) ** 2)
    return float(out) if out.ndim == 0 else out


def scatter(Q, h, omega):
    """Numerov scattering on a uniform grid of spacing ``h`` with potential samples ``Q``.

    A wave incident from the left (low-s side) is matched to a purely
    transmitted wave on the right. Returns a :class:`ScatteringResult`.
    """
    Q = np.asarray(Q, dtype=float)
    f = omega * omega - Q
    if f[0] <= 0 or f[-1] <= 0:
        raise DomainError("both ends must be classically allowed (omega^2 > Q)")
    kmax = math.sqrt(f.max())
    if kmax * h > 0.5:
        raise ResolutionError(f"phase advance per step {kmax * h:.3g} rad exceeds 0.5")
    w = 1.0 + (h * h / 12.0) * f
    n = Q.size

    def discrete_k(fi):
        c = (1.0 - 5.0 * h * h * fi / 12.0) / (1.0 + h * h * fi / 12.0)
        return math.acos(c) / h

    k_right = discrete_k(f[-1])
    phi = [0j] * n
    phi[-1] = complex(math.cos(k_right * h), math.sin(k_right * h))
    phi[-2] = 1.0 + 0j
    wl = w.tolist()
    for i in range(n - 2, 0, -1):
        phi[i - 1] = ((12.0 - 10.0 * wl[i]) * phi[i] - wl[i + 1] * phi[i + 1]) / wl[i - 1]

    k_left = discrete_k(f[0])
    # phi_0 = A + B, phi_1 = A e^{i k h} + B e^{-i k h}
    e = complex(math.cos(k_left * h), math.sin(k_left * h))
    A = (phi[1] - phi[0] / e) / (e - 1.0 / e)
    B = phi[0] - A
    k1, k2 = math.sqrt(f[0]), math.sqrt(f[-1])
    t2 = (k2 / k1) / abs(A) ** 2
    r2 = abs(B / A) ** 2
    return ScatteringResult(t2, r2, k1, k2, n)


def _edges(problem):
    """Exterior points where Q < 1e-6 Q_inf (left) and |Q - Q_inf| < 1e-6 Q_inf (right)."""
    prof, kin, xp = problem.profile, problem.kin, problem.x_plus
    g_inf = kin.gamma**2 * (1.0 - prof.n0 * kin.beta) * (1.0 + prof.n0 * kin.beta)
    n0 = prof.n0

    def rel(x):
        return float(_g_tautau(prof, kin, x)) / prof.refractive_index(x) ** 2 / (g_inf / n0**2)

    lo_span = xp - prof.x_peak
    far = prof.scan_interval()[1]
    while rel(far) < 1.0 - 0.5 * _EDGE_TOL:
        far = xp + 2.0 * (far - xp)
    x_right = brentq(lambda x: rel(x) - (1.0 - 0.5 * _EDGE_TOL), xp + 1e-3 * lo_span, far,
                     xtol=1e-15 * far)
    t_hi = math.log(x_right - xp)
    t_lo = t_hi - 1.0
    while rel(xp + math.exp(t_lo)) > 0.5 * _EDGE_TOL:
        t_lo -= 1.0
    t_left = brentq(lambda t: rel(xp + math.exp(t)) - 0.5 * _EDGE_TOL, t_lo, t_lo + 1.0)
    x_stitch = brentq(lambda x: rel(x) - 0.5, xp + math.exp(t_left), x_right)
    return xp + math.exp(t_left), x_stitch, x_right


def numerov_scattering(problem, omega, points_per_wavelength=10_000, max_points=5_000_000):
    """Exact transmission through the smooth Q(s) by fixed-step Numerov integration.

    The uniform s grid has at least ``points_per_wavelength`` nodes per
    shortest local wavelength 2 pi / omega; x(s) is obtained by integrating
    dx/ds = c g / n from the point where Q = Q_inf/2.
    """
    if omega * omega <= problem.Q_inf:
        raise DomainError("omega^2 must exceed Q_inf")
    prof, kin = problem.profile, problem.kin
    if problem.k_perp == 0:
        return ScatteringResult(1.0, 0.0, omega, omega, 0)
    x_left, x_stitch, x_right = _edges(problem)
    s_left = tortoise(prof, kin, x_left, x_stitch)
    s_right = tortoise(prof, kin, x_right, x_stitch)
    h = 2.0 * math.pi / (omega * points_per_wavelength)
    n_left = int(math.ceil(-s_left / h))
    n_right = int(math.ceil(s_right / h))
    n_total = n_left + n_right + 1
    if n_total > max_points:
        raise ResolutionError(f"grid would need {n_total} points (cap {max_points})")

    def dxds(s, x):
        return C * _g_tautau(prof, kin, x) / prof.refractive_index(x)

    s_grid = h * np.arange(-n_left, n_right + 1)
    x = np.empty_like(s_grid)
    x[n_left] = x_stitch
    fwd = solve_ivp(dxds, (0.0, s_grid[-1]), [x_stitch], method="DOP853",
                    t_eval=s_grid[n_left:], rtol=1e-12, atol=1e-16 * abs(x_stitch))
    bwd = solve_ivp(dxds, (0.0, s_grid[0]), [x_stitch], method="DOP853",
                    t_eval=s_grid[n_left::-1], rtol=1e-12, atol=1e-16 * abs(x_stitch))
    x[n_left:] = fwd.y[0]
    x[: n_left + 1] = bwd.y[0][::-1]
    return scatter(potential_Q(problem, x), h, omega)


def numerov_transmission(problem, omega, points_per_wavelength=10_000):
    """|T|^2 from :func:`numerov_scattering`."""
    return numerov_scattering(problem, omega, points_per_wavelength).transmission
