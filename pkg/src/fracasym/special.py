"""Scalar special functions: Gamma, half-integer Bessel J, and the one- and
two-parameter Mittag-Leffler function on the closed negative real axis.

The Mittag-Leffler evaluator is vectorized and uses three branches:

* power series for small arguments,
* a real-line integral representation (the collapsed Hankel contour, i.e. the
  spectral density of the completely monotone function) in the middle range,
* the algebraic asymptotic expansion for large arguments.

Only order a in (0, 1] and second parameter b in {1, a} are exercised by the
rest of the package, but any b with 0 < b <= 1 + a is accepted.
"""

from __future__ import annotations

import math

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import gamma as _scipy_gamma
from scipy.special import rgamma as _rgamma


class SpecialFunctionError(ValueError):
    pass


def gamma_fn(x):
    """Gamma function for real non-pole arguments."""
    x_arr = np.asarray(x, dtype=float)
    pole = (x_arr <= 0) & (x_arr == np.floor(x_arr))
    if np.any(pole):
        raise SpecialFunctionError("Gamma pole: argument is a nonpositive integer")
    out = _scipy_gamma(x_arr)
    return float(out) if np.isscalar(x) else out


def ml_tail_coefficient(a: float) -> float:
    """Leading coefficient of E_{a,a}(-x) ~ C x^{-2}: C = -1/Gamma(-a).

    Positive for a in (0, 1); degenerate at a = 1.
    """
    if not (0.0 < a < 1.0):
        raise SpecialFunctionError(f"tail coefficient requires a in (0,1), got {a}")
    # -1/Gamma(-a) = sin(pi a) Gamma(1 + a) / pi by reflection
    return math.sin(math.pi * a) * math.gamma(1.0 + a) / math.pi


# --- Mittag-Leffler machinery -------------------------------------------------

_SERIES_CUT = 0.9
_ASYMP_CUT = 40.0
_R_CUT = 45.0  # e^{-45} ~ 3e-20: truncation of the contour integral


def _gl_panels(breaks, npts):
    """Concatenated Gauss-Legendre nodes/weights over consecutive panels."""
    xg, wg = leggauss(npts)
    nodes, weights = [], []
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
        nodes.append(mid + half * xg)
        weights.append(half * wg)
    return np.concatenate(nodes), np.concatenate(weights)


# Panels for the contour integral: [0,1] in the substituted variable v
# (graded toward 0), then [1, R_CUT] in r (graded for the e^{-r} decay).
_V_NODES, _V_WEIGHTS = _gl_panels(
    [0.0, 1e-8, 1e-6, 1e-4, 1e-2, 0.1, 0.3, 0.6, 1.0], 24
)
_R_NODES, _R_WEIGHTS = _gl_panels([1.0, 2.0, 4.0, 8.0, 16.0, 28.0, _R_CUT], 32)


def _ml_series(a, b, y):
    """Power series sum_k (-y)^k / Gamma(b + a k) for y in [0, ~1)."""
    total = np.full_like(y, _rgamma(b))
    term = np.ones_like(y)
    for k in range(1, 400):
        term = term * (-y)
        coeff = _rgamma(b + a * k)
        total += term * coeff
        if np.max(np.abs(term)) * max(abs(coeff), 1.0) < 1e-18:
            break
    return total

def _ml_integral(a, b, y):
    """Collapsed Hankel contour on the negative axis, valid for a in (0,1):

    E_{a,b}(-y) = (1/pi) * int_0^inf e^{-r} r^{a-b}
                  [y sin(pi(b-a)) + r^a sin(pi b)]
                  / (r^{2a} + 2 y r^a cos(pi a) + y^2) dr.

    On [0,1] the substitution r = v^{1/(1+a-b)} absorbs the r^{a-b} factor
    exactly; on [1, R_CUT] the integrand is smooth.
    """
    y = y[:, None]
    sin_ba = math.sin(math.pi * (b - a))
    sin_b = math.sin(math.pi * b)
    cos_a = math.cos(math.pi * a)

    def core(r, ra_btimes_dr):
        ra = r**a
        num = y * sin_ba + ra * sin_b
        den = ra * ra + 2.0 * y * ra * cos_a + y * y
        return np.exp(-r) * num / den * ra_btimes_dr

    q = 1.0 + a - b
    if q <= 0:
        raise SpecialFunctionError(f"integral branch requires b < 1 + a, got b={b}")
    r_low = _V_NODES ** (1.0 / q)
    part_low = core(r_low, _V_WEIGHTS / q)
    part_high = core(_R_NODES, _R_NODES ** (a - b) * _R_WEIGHTS)
    return (part_low.sum(axis=1) + part_high.sum(axis=1)) / math.pi


def _ml_asymptotic(a, b, y, kmax=60):
    """E_{a,b}(-y) ~ sum_{k>=1} (-1)^{k+1} y^{-k} / Gamma(b - a k), truncated
    adaptively at the smallest term."""
    inv = 1.0 / y
    total = np.zeros_like(y)
    term = np.ones_like(y)
    prev_mag = np.full_like(y, np.inf)
    active = np.ones(y.shape, dtype=bool)
    sign = 1.0
    for k in range(1, kmax + 1):
        term = term * inv
        coeff = float(_rgamma(b - a * k))
        this_sign, sign = sign, -sign
        if coeff == 0.0:  # Gamma pole: term vanishes identically
            continue
        contrib = this_sign * term * coeff
        mag = np.abs(contrib)
        # freeze rows once terms stop decreasing (divergent-tail guard)
        active &= mag <= prev_mag
        total[active] += contrib[active]
        prev_mag = mag
        if not active.any() or np.max(mag[active], initial=0.0) < 1e-18:
            break
    return total


def mittag_leffler(a: float, b: float, x):
    """E_{a,b}(x) for x <= 0, vectorized over x.

    Supported: 0 < a <= 1 with 0 < b < 1 + a (a = 1 only with b = 1).
    """
    if not (0.0 < a <= 1.0):
        raise SpecialFunctionError(f"order a must be in (0, 1], got {a}")
    if not (0.0 < b < 1.0 + a):
        raise SpecialFunctionError(f"second parameter b must be in (0, 1+a), got {b}")
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr > 0):
        raise SpecialFunctionError("positive arguments are out of scope (x <= 0 only)")

    if a == 1.0:
        if b != 1.0:
            raise SpecialFunctionError("a = 1 supported only with b = 1 (E_1 = exp)")
        out = np.exp(x_arr)
        return float(out) if np.isscalar(x) else out

    y = -x_arr.ravel()
    out = np.empty_like(y)

    small = y <= _SERIES_CUT
    large = y >= _ASYMP_CUT
    mid = ~small & ~large
    if small.any():
        out[small] = _ml_series(a, b, y[small])
    if mid.any():
        out[mid] = _ml_integral(a, b, y[mid])
    if large.any():
        out[large] = _ml_asymptotic(a, b, y[large])

    out = out.reshape(x_arr.shape)
    return float(out) if np.isscalar(x) else out


def bessel_j_half(order: float, x):
    """J_{k+1/2}(x) for x > 0 via the closed trigonometric forms, with an
    ascending-series fallback for small x to avoid cancellation."""
    k = order - 0.5
    if k < 0 or k != math.floor(k):
        raise SpecialFunctionError(
            f"order must be a half-integer k + 1/2 with k >= 0, got {order}"
        )
    k = int(k)
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr <= 0):
        raise SpecialFunctionError("bessel_j_half requires x > 0")

    xf = x_arr.ravel()
    out = np.empty_like(xf)

    small = xf <= 1.5
    if small.any():
        xs = xf[small]
        z = -0.25 * xs * xs
        term = np.ones_like(xs)
        total = np.full_like(xs, _rgamma(order + 1.0))
        for m in range(1, 20):
            term = term * z / m
            total += term * _rgamma(order + 1.0 + m)
        out[small] = (0.5 * xs) ** order * total

    big = ~small
    if big.any():
        xb = xf[big]
        pref = np.sqrt(2.0 / (math.pi * xb))
        jm, j = pref * np.cos(xb), pref * np.sin(xb)  # J_{-1/2}, J_{1/2}
        nu = 0.5
        for _ in range(k):
            jm, j = j, (2.0 * nu / xb) * j - jm
            nu += 1.0
        out[big] = j

    out = out.reshape(x_arr.shape)
    return float(out) if np.isscalar(x) else out
