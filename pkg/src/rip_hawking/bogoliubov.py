"""Bogoliubov magnitudes of the singular out mode and the thermal ratio.

The out mode behaves as xi(u) u^{i sigma} for u > 0 (u measured from the
horizon). Its overlaps with in modes exp(-+ i k' u) reduce, after rotating
the contour onto the imaginary u axis, to

    I(-+) = int_0^inf xi(-+ i t / k') t^{i sigma} e^{-t} dt,

with |alpha|^2 = e^{pi sigma} |I(-)|^2 / k'^2 and |beta|^2 = e^{-pi sigma} |I(+)|^2 / k'^2,
up to a normalisation common to both. For xi(u) = u both integrals equal
-+ (i/k') Gamma(2 + i sigma).
"""

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import DomainError, QuadratureError
from .kinematics import HBAR, K_B

MAX_NODES = 2**14


@dataclass(frozen=True)
class BogoliubovPair:
    """Normalisation-free |alpha|^2, |beta|^2 and their ratio."""

    sigma_b: float
    alpha_sq: float
    beta_sq: float
    ratio: float


def gamma_abs2(s):
    """|Gamma(2 + i s)|^2 = (1 + s^2) pi s / sinh(pi s), equal to 1 at s = 0."""
    s = np.asarray(s, dtype=float)
    x = np.pi * np.abs(s)
    with np.errstate(invalid="ignore", divide="ignore"):
        # pi s / sinh(pi s) written to avoid overflow for large |s|
        frac = np.where(x == 0, 1.0, 2.0 * x * np.exp(-x) / -np.expm1(-2.0 * x))
    out = (1.0 + s * s) * frac
    return float(out) if out.ndim == 0 else out


def _boosted_gamma(s):
    """e^{pi s} pi s / sinh(pi s) = 2 pi s / (1 - e^{-2 pi s}), finite for large s."""
    if s == 0:
        return 1.0
    x = 2.0 * math.pi * abs(s)
    h = x / -math.expm1(-x)
    return h if s > 0 else h * math.exp(-x)


def closed_form_magnitudes(sigma_b, k_u_prime):
    """|alpha|^2 = e^{pi s} |Gamma(2+is)|^2 / k'^4 and |beta|^2 with e^{-pi s}."""
    if not k_u_prime > 0:
        raise DomainError("k_u' must be positive")
    common = (1.0 + sigma_b * sigma_b) / k_u_prime**4
    x = 2.0 * math.pi * sigma_b
    return BogoliubovPair(
        sigma_b=sigma_b,
        alpha_sq=common * _boosted_gamma(sigma_b),
        beta_sq=common * _boosted_gamma(-sigma_b),
        ratio=math.exp(x) if x < 709.0 else math.inf,
    )


def _xi_callable(xi):
    if xi == "leading":
        return lambda u: u, 1
    if callable(xi) and not hasattr(xi, "coefficients"):
        return xi, 4
    # a Frobenius solution: xi(u) = u * S(u / radius), S = sum c_n z^n
    coeffs = np.asarray(xi.coefficients, dtype=complex)
    radius = xi.radius
    return (lambda u: u * P.polyval(u / radius, coeffs)), len(coeffs)


def _rotated_integral(xi_fn, sign, sigma, k_prime, degree, rtol):
    """int_0^inf xi(sign * i t / k') t^{i sigma} e^{-t} dt via t = e^s and the trapezoid rule."""
    s_lo = -40.0
    t_max = 40.0 + 2.0 * (degree + 1) + abs(sigma)
    s_hi = math.log(t_max)

    def trap(n):
        s = np.linspace(s_lo, s_hi, n + 1)
        t = np.exp(s)
        f = xi_fn(sign * 1j * t / k_prime) * np.exp(1j * sigma * s - t) * t
        h = (s_hi - s_lo) / n
        return h * (f.sum() - 0.5 * (f[0] + f[-1]))

    n = 64
    prev = trap(n)
    while n < MAX_NODES:
        n *= 2
        cur = trap(n)
        if abs(cur - prev) <= rtol * abs(cur):
            return cur
        prev = cur
    raise QuadratureError(f"rotated-contour quadrature did not converge with {MAX_NODES} nodes")


def quadrature_magnitudes(sigma_b, k_u_prime, xi="leading", rtol=1e-13):
    """|alpha|^2, |beta|^2 from numerical quadrature on the rotated contours.

    ``xi`` is "leading" (xi(u) = u), a Frobenius solution about the horizon
    (its series part is used as xi), or any callable accepting complex u.
    """
    if not k_u_prime > 0:
        raise DomainError("k_u' must be positive")
    fn, degree = _xi_callable(xi)
    i_alpha = _rotated_integral(fn, -1.0, sigma_b, k_u_prime, degree, rtol)
    i_beta = _rotated_integral(fn, 1.0, sigma_b, k_u_prime, degree, rtol)
    a2 = math.exp(math.pi * sigma_b) * abs(i_alpha) ** 2 / k_u_prime**2
    b2 = math.exp(-math.pi * sigma_b) * abs(i_beta) ** 2 / k_u_prime**2
    return BogoliubovPair(sigma_b, a2, b2, a2 / b2)


def _damped_integral(sigma, sign, eps, nodes=24):
    """int_0^inf x^{1+i sigma} e^{sign i x - eps x} dx by composite Gauss-Legendre."""
    xg, wg = np.polynomial.legendre.leggauss(nodes)
    x_end = 50.0 / eps
    # geometric panels near the origin, unit panels beyond x = 1
    edges = np.concatenate([np.geomspace(1e-12, 1.0, 60), np.arange(2.0, x_end + 1.0)])
    edges = np.concatenate([[0.0], edges])
    a, b = edges[:-1, None], edges[1:, None]
    x = 0.5 * (b - a) * xg + 0.5 * (b + a)
    w = 0.5 * (b - a) * wg
    f = np.exp((1.0 + 1j * sigma) * np.log(x) + sign * 1j * x - eps * x)
    return np.sum(w * f)


def damped_direct_magnitudes(sigma_b, k_u_prime, eps=(0.04, 0.02, 0.01)):
    """Secondary check without contour rotation.

    Evaluates int_0^inf u^{1+i sigma} e^{-+ i k' u - eps k' u} du directly and
    Richardson-extrapolates |.|^2 quadratically to eps -> 0.
    """
    if not k_u_prime > 0:
        raise DomainError("k_u' must be positive")
    e = np.asarray(eps, dtype=float)
    if e.size != 3:
        raise DomainError("need three damping values for quadratic extrapolation")
    out = []
    for sign in (-1.0, 1.0):
        vals = np.array([abs(_damped_integral(sigma_b, sign, ei)) ** 2 for ei in e])
        # value at eps = 0 of the quadratic through the three points
        out.append(float(np.polyval(np.polyfit(e, vals, 2), 0.0)) / k_u_prime**4)
    a2, b2 = out
    return BogoliubovPair(sigma_b, a2, b2, a2 / b2)


def occupation(omega_l, T, greybody=1.0):
    """Mean quanta greybody / (exp(hbar omega_l / k_b T) - 1)."""
    T = np.asarray(T, dtype=float)
    g = np.asarray(greybody, dtype=float)
    if np.any(T <= 0):
        raise DomainError("temperature must be positive")
    if np.any((g < 0) | (g > 1)):
        raise DomainError("greybody factor must lie in [0, 1]")
    with np.errstate(over="ignore"):
        out = g / np.expm1(HBAR * np.asarray(omega_l, dtype=float) / (K_B * T))
    return float(out) if np.ndim(out) == 0 else out


def occupation_from_ratio(greybody, ratio):
    """Same occupation from |alpha|^2/|beta|^2: greybody / (ratio - 1)."""
    return greybody / (ratio - 1.0)
