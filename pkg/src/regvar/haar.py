"""Invariant measure and harmonic analysis on the Popa groups.

The invariant (Haar) measure of ``G_rho`` has density ``(1+rho)/(1+rho*t)``
with respect to Lebesgue measure; it degenerates to ``dt`` at rho = 0 and to
``dt/t`` at rho = inf.  Characters are ``u -> exp(i*gamma*log(1+rho*u))``, so
after the substitution ``w = log(1+rho*t)`` every transform below is an
ordinary Fourier/Laplace integral on the line, truncated to ``[-T, T]`` with
``T = spec.truncation``.
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Callable

from regvar.popa import (
    DomainError,
    PopaParam,
    PopaPoint,
    iso_exp,
    iso_log,
)
from regvar.quadrature import (
    QuadratureResult,
    QuadratureSpec,
    QuadratureWarning,
    adaptive_integral,
)

__all__ = [
    "Interval",
    "haar_interval_measure",
    "haar_integrate",
    "character_eval",
    "pullback_multiplicative",
    "fourier_popa",
    "mellin_popa",
    "popa_convolution",
    "beurling_convolution",
]


@dataclass(frozen=True)
class Interval:
    """Order interval (lo, hi) inside the carrier of ``param``."""

    param: PopaParam
    lo: float
    hi: float

    def __post_init__(self) -> None:
        a = PopaPoint(self.param, self.lo)
        b = PopaPoint(self.param, self.hi)
        if not a.value < b.value:
            raise DomainError(f"interval needs lo < hi, got ({self.lo}, {self.hi})")
        object.__setattr__(self, "lo", a.value)
        object.__setattr__(self, "hi", b.value)


def haar_interval_measure(iv: Interval) -> float:
    """Closed-form invariant measure of an interval."""
    p = iv.param
    if p.is_zero:
        return iv.hi - iv.lo
    if p.is_infinite:
        return math.log(iv.hi) - math.log(iv.lo)
    scale = (1.0 + p.rho) / p.rho
    return scale * (math.log1p(p.rho * iv.hi) - math.log1p(p.rho * iv.lo))


def _report_quadrature(res: QuadratureResult, what: str) -> None:
    if not res.converged:
        warnings.warn(
            f"{what} did not converge: best estimate {res.value!r}, error bound {res.error:.3e}",
            QuadratureWarning,
            stacklevel=3,
        )


def haar_integrate(
    f: Callable[[float], float],
    iv: Interval,
    spec: QuadratureSpec = QuadratureSpec(),
) -> float:
    """Integral of f over the interval against the invariant measure.

    The substitution ``w = log(1+rho*t)`` turns the Haar integral into a
    Lebesgue integral before any quadrature is attempted.
    """
    p = iv.param
    if p.is_zero:
        res = adaptive_integral(f, iv.lo, iv.hi, spec)
    elif p.is_infinite:
        res = adaptive_integral(lambda w: f(math.exp(w)), math.log(iv.lo), math.log(iv.hi), spec)
    else:
        scale = (1.0 + p.rho) / p.rho
        res = adaptive_integral(
            lambda w: scale * f(iso_exp(p, w)),
            math.log1p(p.rho * iv.lo),
            math.log1p(p.rho * iv.hi),
            spec,
        )
    _report_quadrature(res, f"haar_integrate over ({iv.lo}, {iv.hi})")
    return float(res.value.real if isinstance(res.value, complex) else res.value)


def character_eval(param: PopaParam, gamma: float, u: float) -> complex:
    """Unitary character exp(i*gamma*log(1+rho*u)); exp(i*gamma*u) at rho = 0."""
    return cmath.exp(1j * gamma * iso_log(param, u))


def pullback_multiplicative(f: Callable[[float], float], param: PopaParam) -> Callable[[float], float]:
    """Transport f from a finite-rho group to (0, inf): t -> (1+rho)/rho * f((t-1)/rho)."""
    if not param.is_finite:
        raise DomainError("pullback requires a finite positive parameter")
    rho = param.rho
    scale = (1.0 + rho) / rho

    def g(t: float) -> float:
        if t <= 0.0:
            raise DomainError(f"pullback argument must be positive, got {t!r}")
        return scale * f((t - 1.0) / rho)

    return g


def _additive_profile(f: Callable[[float], float], param: PopaParam) -> Callable[[float], float]:
    """f composed with the group isomorphism, as a function of w = log eta."""
    if param.is_zero:
        return f
    if param.is_infinite:
        return lambda w: f(math.exp(w))
    rho = param.rho
    scale = (1.0 + rho) / rho
    return lambda w: scale * f(math.expm1(w) / rho)


def _oscillation_breakpoints(freq: float, T: float, min_cells: int) -> tuple:
    """Initial cell edges no wider than half an oscillation period."""
    if freq == 0.0:
        return ()
    period = 2.0 * math.pi / abs(freq)
    needed = math.ceil(2.0 * T / (0.5 * period))
    if needed <= min_cells:
        return ()
    needed = min(needed, 1 << 16)
    return tuple(-T + 2.0 * T * k / needed for k in range(1, needed))


def fourier_popa(
    f: Callable[[float], float],
    param: PopaParam,
    gamma: float,
    spec: QuadratureSpec = QuadratureSpec(),
) -> complex:
    """Fourier coefficient of f against the character with frequency gamma.

    Computed as the line integral of ``f_profile(w) * exp(-i*gamma*w)`` over
    ``[-T, T]`` where ``f_profile`` is f pushed through the isomorphism (for
    finite rho this is the multiplicative pullback evaluated at ``e^w``).
    """
    prof = _additive_profile(f, param)
    T = spec.truncation

    def integrand(w: float) -> complex:
        return prof(w) * cmath.exp(-1j * gamma * w)

    res = adaptive_integral(
        integrand, -T, T, spec, breakpoints=_oscillation_breakpoints(gamma, T, 64)
    )
    _report_quadrature(res, f"fourier_popa(gamma={gamma})")
    return complex(res.value)


def mellin_popa(
    f: Callable[[float], float],
    param: PopaParam,
    z: complex,
    spec: QuadratureSpec = QuadratureSpec(),
) -> complex:
    """Mellin-type transform of the pullback: integral of f_rho(t) t^-z dt/t."""
    if not param.is_finite:
        raise DomainError("mellin transform requires a finite positive parameter")
    prof = _additive_profile(f, param)
    z = complex(z)
    T = spec.truncation

    def integrand(w: float) -> complex:
        return prof(w) * cmath.exp(-z * w)

    res = adaptive_integral(
        integrand, -T, T, spec, breakpoints=_oscillation_breakpoints(z.imag, T, 64)
    )
    _report_quadrature(res, f"mellin_popa(z={z})")
    return complex(res.value)


def popa_convolution(
    f: Callable[[float], float],
    g: Callable[[float], float],
    x: PopaPoint,
    spec: QuadratureSpec = QuadratureSpec(),
) -> float:
    """Haar convolution (f*g)(x) = integral of f(inv(t)) g(x o t) d_eta(t).

    Evaluated on the additive scale w = log eta(t), where the invariant
    measure is (1+rho)/rho * dw (plain dw at the two extreme parameters).
    """
    p = x.param
    T = spec.truncation
    if p.is_zero:
        integrand = lambda t: f(-t) * g(x.value + t)
        weight = 1.0
    elif p.is_infinite:
        integrand = lambda w: f(math.exp(-w)) * g(x.value * math.exp(w))
        weight = 1.0
    else:
        rho = p.rho
        eta_x = 1.0 + rho * x.value

        def integrand(w: float) -> float:
            inv_t = math.expm1(-w) / rho
            xt = (eta_x * math.exp(w) - 1.0) / rho
            return f(inv_t) * g(xt)

        weight = (1.0 + rho) / rho
    res = adaptive_integral(integrand, -T, T, spec)
    _report_quadrature(res, f"popa_convolution at x={x.value}")
    v = res.value.real if isinstance(res.value, complex) else res.value
    return weight * float(v)


def beurling_convolution(
    F: Callable[[float], float],
    H: Callable[[float], float],
    phi: Callable[[float], float],
    x: float,
    spec: QuadratureSpec = QuadratureSpec(),
) -> float:
    """Convolution along the auxiliary flow: integral of F(-t) H(x + t*phi(x)) dt.

    H is only evaluated where F(-t) is non-zero, so H may be defined just on
    the reachable window.
    """
    px = phi(x)
    if not (px > 0.0 and math.isfinite(px)):
        raise DomainError(f"phi(x) must be positive and finite, got {px!r}")
    T = spec.truncation

    def integrand(t: float) -> float:
        fv = F(-t)
        if fv == 0.0:
            return 0.0
        return fv * H(x + t * px)

    res = adaptive_integral(integrand, -T, T, spec)
    _report_quadrature(res, f"beurling_convolution at x={x}")
    v = res.value.real if isinstance(res.value, complex) else res.value
    return float(v)
