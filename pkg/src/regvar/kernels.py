"""Canonical limit-kernel family between two Popa groups, plus the
functional-equation residuals that characterise it.

The family with index kappa maps ``G_rho -> G_sigma`` by conjugating the
power map through the multiplicative isomorphisms of the two groups:

    K_kappa(t) = iso_exp_sigma(kappa * iso_log_rho(t))

which unfolds to the familiar nine closed forms, e.g. ``kappa*t`` for
(rho, sigma) = (0, 0), ``((1+rho*t)^kappa - 1)/sigma`` for finite pairs and
``t^kappa`` for (inf, inf).  Every member is an o-homomorphism; that is the
additivity property the property tests pin down.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from regvar.popa import (
    DomainError,
    PopaParam,
    PopaPoint,
    circle,
    eta,
    iso_exp,
    iso_log,
)
from regvar.quadrature import QuadratureSpec, adaptive_integral

__all__ = [
    "KernelParams",
    "GoldieAux",
    "kernel_eval",
    "kernel_inverse",
    "bg_residual",
    "cj_residual",
    "k_from_multiplier",
    "goldie_integral",
    "goldie_integral_quadrature",
    "goldie_ode_residual",
]


@dataclass(frozen=True)
class KernelParams:
    """Domain parameter rho, codomain parameter sigma and index kappa."""

    rho: PopaParam
    sigma: PopaParam
    kappa: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.kappa):
            raise DomainError(f"kappa must be finite, got {self.kappa!r}")


def kernel_eval(kp: KernelParams, t: float) -> float:
    """Value of the canonical kernel at t; covers all nine parameter cells."""
    return iso_exp(kp.sigma, kp.kappa * iso_log(kp.rho, t))


def kernel_inverse(kp: KernelParams, z: float) -> float:
    """Inverse map G_sigma -> G_rho; requires kappa != 0."""
    if kp.kappa == 0.0:
        raise DomainError("kappa = 0 kernel is constant and has no inverse")
    return iso_exp(kp.rho, iso_log(kp.sigma, z) / kp.kappa)


def bg_residual(
    K: Callable[[float], float],
    g: Callable[[float], float],
    rho: PopaParam,
    u: float,
    v: float,
) -> float:
    """Residual of the affine cocycle equation K(u o v) = g(v)K(u) + K(v)."""
    uv = circle(PopaPoint(rho, u), PopaPoint(rho, v)).value
    return K(uv) - (g(v) * K(u) + K(v))


def cj_residual(
    g: Callable[[float], float],
    rho: PopaParam,
    u: float,
    v: float,
) -> float:
    """Residual of the multiplicative equation g(u o v) = g(u)g(v)."""
    uv = circle(PopaPoint(rho, u), PopaPoint(rho, v)).value
    return g(uv) - g(u) * g(v)


def k_from_multiplier(g: Callable[[float], float], kappa_const: float) -> Callable[[float], float]:
    """Affine solution K(t) = kappa_const * (g(t) - 1) paired with multiplier g.

    Requires g(0) = 1 (up to 1e-10), the normalisation under which the pair
    (K, g) solves the affine cocycle equation whenever g is multiplicative.
    """
    g0 = g(0.0)
    if abs(g0 - 1.0) > 1e-10:
        raise DomainError(f"multiplier must satisfy g(0) = 1, got {g0!r}")
    return lambda t: kappa_const * (g(t) - 1.0)


@dataclass(frozen=True)
class GoldieAux:
    """Power multiplier g(t) = (1+rho*t)^-gamma on a finite-parameter group."""

    rho: PopaParam
    gamma: float

    def __post_init__(self) -> None:
        if not self.rho.is_finite:
            raise DomainError("goldie auxiliary requires a finite positive rho")
        if not math.isfinite(self.gamma):
            raise DomainError(f"gamma must be finite, got {self.gamma!r}")

    def g(self, t: float) -> float:
        return math.exp(-self.gamma * math.log1p(self.rho.rho * t))

    def g_prime(self, t: float) -> float:
        r = self.rho.rho
        return -self.gamma * r * math.exp(-(self.gamma + 1.0) * math.log1p(r * t))


def goldie_integral(aux: GoldieAux, u: float) -> float:
    """G(u) = integral of g(t)/(1+rho*t) dt from 0 to u, in closed form.

    Equals (1 - (1+rho*u)^-gamma)/(gamma*rho) for gamma != 0 and
    log(1+rho*u)/rho for gamma = 0.
    """
    r = aux.rho.rho
    w = math.log1p(r * u)  # validates 1 + rho*u > 0 via ValueError on log1p
    if aux.gamma == 0.0:
        return w / r
    return -math.expm1(-aux.gamma * w) / (aux.gamma * r)


def goldie_integral_quadrature(
    aux: GoldieAux, u: float, spec: QuadratureSpec = QuadratureSpec()
) -> float:
    """Quadrature twin of :func:`goldie_integral`, on the scale w = log(1+rho*t)."""
    r = aux.rho.rho
    hi = math.log1p(r * u)
    lo, hi, sign = (hi, 0.0, -1.0) if hi < 0.0 else (0.0, hi, 1.0)
    if lo == hi:
        return 0.0
    res = adaptive_integral(lambda w: aux.g(math.expm1(w) / r) / r, lo, hi, spec)
    v = res.value.real if isinstance(res.value, complex) else res.value
    return sign * float(v)


def goldie_ode_residual(aux: GoldieAux, c1: float, kappa_const: float, u: float) -> float:
    """Residual of kappa*g'(u) = c1*g(u)/(1+rho*u); zero iff gamma = -c1/(kappa*rho)."""
    if kappa_const == 0.0:
        raise DomainError("kappa_const must be non-zero")
    return kappa_const * aux.g_prime(u) - c1 * aux.g(u) / eta(aux.rho, u)
