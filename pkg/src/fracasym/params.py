"""Problem parameters, derived exponents and space-time scale classification.

The model is u_t^alpha + (-Laplacian)^beta u = f in dimension N > 4*beta.
Everything here is exact arithmetic on (alpha, beta, N, gamma); no grids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class ParameterError(ValueError):
    """Raised when (alpha, beta, dim) fall outside the supported regime."""


@dataclass(frozen=True)
class FracParams:
    """Orders of the Caputo derivative and Laplacian power, plus the dimension.

    alpha = 1 is admitted only with validation_mode=True, in which case the
    kernels degenerate to classical (heat-type) ones and the singular-profile
    machinery reports "not applicable".
    """

    alpha: float
    beta: float
    dim: int
    validation_mode: bool = False

    def __post_init__(self):
        if not (0.0 < self.alpha <= 1.0):
            raise ParameterError(f"alpha must be in (0, 1], got {self.alpha}")
        if self.alpha == 1.0 and not self.validation_mode:
            raise ParameterError(
                "alpha = 1 requires validation_mode=True (classical-kernel oracles only)"
            )
        if not (0.0 < self.beta <= 1.0):
            raise ParameterError(f"beta must be in (0, 1], got {self.beta}")
        if int(self.dim) != self.dim:
            raise ParameterError(f"dim must be an integer, got {self.dim}")
        if self.dim <= 4.0 * self.beta:
            raise ParameterError(
                f"dim > 4*beta violated: dim={self.dim}, 4*beta={4 * self.beta}"
            )
        if self.dim % 2 == 0:
            raise ParameterError(
                "even dim not supported (half-integer Bessel orders required); "
                f"got dim={self.dim}"
            )


@dataclass(frozen=True)
class Exponents:
    """Derived exponents: theta = alpha/(2 beta), sigma_* = 1 - alpha + N theta,
    p_* = N/(N - 4 beta), p_c = N/(N - 2 beta)."""

    params: FracParams
    theta: float
    sigma_star: float
    p_star: float
    p_crit: float


def derive_exponents(params: FracParams) -> Exponents:
    a, b, n = params.alpha, params.beta, params.dim
    theta = a / (2.0 * b)
    return Exponents(
        params=params,
        theta=theta,
        sigma_star=1.0 - a + n * theta,
        p_star=n / (n - 4.0 * b),
        p_crit=n / (n - 2.0 * b),
    )


def sigma_p(exps: Exponents, p: float) -> float:
    """L^p decay exponent of the Duhamel kernel: sigma_* - N*theta/p."""
    if p < 1.0:
        raise ParameterError(f"p must be in [1, inf], got {p}")
    if math.isinf(p):
        return exps.sigma_star
    return exps.sigma_star - exps.params.dim * exps.theta / p


def q_critical(exps: Exponents, p: float) -> float:
    """Integrability threshold q_c(p) = Np/(2 beta p + N), N/(2 beta) at p=inf."""
    if p < 1.0:
        raise ParameterError(f"p must be in [1, inf], got {p}")
    n, b = exps.params.dim, exps.params.beta
    if math.isinf(p):
        return n / (2.0 * b)
    return n * p / (2.0 * b * p + n)


class ScaleClass(Enum):
    SLOW = "S"
    CRITICAL1 = "C1"
    CRITICAL = "C"
    FAST1 = "F1"
    FAST = "F"
    COMPACT = "compact"
    OUTER = "outer"


@dataclass(frozen=True)
class ScaleSpec:
    """A space-time scale.

    kind="compact": ball of radius `radius`.
    kind="intermediate": phi(t) = coeff * t**exponent * (log t)**log_exponent,
        with annulus bounds (nu, mu) relative to phi(t).
    kind="outer": exterior region |x| > nu * t**theta.
    """

    kind: str
    radius: float = 1.0
    coeff: float = 1.0
    exponent: float = 0.0
    log_exponent: float = 0.0
    nu: float = 1.0
    mu: float = 2.0

    def __post_init__(self):
        if self.kind not in ("compact", "intermediate", "outer"):
            raise ParameterError(f"unknown scale kind {self.kind!r}")
        if self.kind == "intermediate" and not self.nu < self.mu:
            raise ParameterError("annulus bounds require nu < mu")

    def phi(self, t: float) -> float:
        if self.kind != "intermediate":
            raise ParameterError("phi(t) only defined for intermediate scales")
        return self.coeff * t**self.exponent * math.log(t) ** self.log_exponent


def _check_intermediate(exps: Exponents, scale: ScaleSpec):
    if scale.kind != "intermediate":
        raise ParameterError("classification requires an intermediate scale")
    e, l = scale.exponent, scale.log_exponent
    theta = exps.theta
    # phi must grow unboundedly but be o(t^theta)
    if not (e > 0.0 or (e == 0.0 and l > 0.0)):
        raise ParameterError("phi(t) must grow: need e > 0 or (e = 0, l > 0)")
    if not (e < theta or (e == theta and l < 0.0)):
        raise ParameterError("phi(t) must be o(t^theta)")


def classify_scale(gamma: float, exps: Exponents, scale: ScaleSpec) -> ScaleClass:
    """Classify an intermediate power-log scale phi(t) = c t^e (log t)^l.

    Classification is symbolic on (e, l); multiplicative constants are ignored,
    matching the asymptotic-comparison semantics of the case list.
    """
    _check_intermediate(exps, scale)
    e, l = scale.exponent, scale.log_exponent
    a, b = exps.params.alpha, exps.params.beta
    theta = exps.theta

    if gamma < 1.0:
        return ScaleClass.SLOW
    if gamma >= 1.0 + a:
        return ScaleClass.FAST
    if gamma == 1.0:
        # reference scale t^theta / (log t)^(1/(2 beta))
        ref = (theta, -1.0 / (2.0 * b))
        if (e, l) < ref:
            return ScaleClass.SLOW
        if (e, l) == ref:
            return ScaleClass.CRITICAL1
        return ScaleClass.FAST1
    # gamma in (1, 1 + alpha): reference scale t^((1 + alpha - gamma)/(2 beta))
    ref = ((1.0 + a - gamma) / (2.0 * b), 0.0)
    if (e, l) < ref:
        return ScaleClass.SLOW
    if (e, l) == ref:
        return ScaleClass.CRITICAL
    return ScaleClass.FAST


def rate_intermediate(
    exps: Exponents,
    p: float,
    gamma: float,
    scale_class: ScaleClass,
    phi_at_t: float,
    t: float,
) -> float:
    """Sharp decay rate for the annulus norm at an intermediate scale."""
    sp = sigma_p(exps, p)
    a = exps.params.alpha
    theta = exps.theta
    if scale_class in (ScaleClass.SLOW, ScaleClass.CRITICAL1, ScaleClass.CRITICAL):
        return t**-gamma * phi_at_t ** ((1.0 - sp) / theta)
    if scale_class is ScaleClass.FAST1:
        return t ** -(1.0 + a) * math.log(t) * phi_at_t ** ((1.0 + a - sp) / theta)
    if scale_class is ScaleClass.FAST:
        return t ** -(1.0 + a) * phi_at_t ** ((1.0 + a - sp) / theta)
    raise ParameterError(f"{scale_class} is not an intermediate class")


def rate_outer(exps: Exponents, p: float, gamma: float, t: float) -> float:
    """Sharp decay rate for the exterior norm over |x| > nu t^theta."""
    sp = sigma_p(exps, p)
    if gamma < 1.0:
        return t ** (1.0 - gamma - sp)
    if gamma == 1.0:
        return t**-sp * math.log(t)
    return t**-sp


def rate_compact(gamma: float, alpha: float) -> float:
    """Decay exponent on compact sets: min(gamma, 1 + alpha)."""
    return min(gamma, 1.0 + alpha)
