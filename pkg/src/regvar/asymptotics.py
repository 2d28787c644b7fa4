"""Asymptotic ratio/difference operators, their exact cocycle identities,
limit estimation on geometric grids, index fitting and Beck partitions.

The three operator scales:

  * Karamata (multiplicative):   K(t, x) = f(x*t)/f(x)
  * Beurling (flow of phi):      K(t, x) = f(x + t*phi(x))/f(x)
  * general (difference):        K(t, x) = (f(x + t*phi(x)) - f(x))/h(x)

All three satisfy exact pre-limit cocycle identities in which the second
argument is translated along the flow; the ``cocycle_residual_*`` functions
return the defect of those identities, which is zero up to rounding for any
admissible f, phi, h.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from regvar.popa import (
    DomainError,
    PopaParam,
    eta,
    iso_exp,
    iso_log,
    power,
)

__all__ = [
    "TableRangeError",
    "LimitEvaluationError",
    "RationalRatioWarning",
    "SampledFunction",
    "LimitScheme",
    "EstimationResult",
    "karamata_op",
    "eta_local",
    "beurling_op",
    "general_op",
    "cocycle_residual_karamata",
    "cocycle_residual_beurling",
    "cocycle_residual_general",
    "estimate_limit",
    "estimate_rho",
    "estimate_kernel",
    "estimate_karamata",
    "estimate_beurling",
    "fit_kappa",
    "two_point_index",
    "beck_partition",
    "beck_riemann_sum",
    "goldie_sum",
]


class TableRangeError(DomainError):
    """Requested abscissa falls outside a table-backed function's range."""


class LimitEvaluationError(RuntimeError):
    """An operator curve failed to evaluate at some grid position."""

    def __init__(self, step: int, x: float, cause: Exception):
        super().__init__(f"evaluation failed at grid step {step} (x={x!r}): {cause}")
        self.step = step
        self.x = x
        self.cause = cause


class RationalRatioWarning(UserWarning):
    """The two probe ratios are multiplicatively dependent; the two-point
    index read-out may be misleading."""


class SampledFunction:
    """A positive function given either by a rule or by a sample table.

    Table mode interpolates log-linearly (linear in log x and log f) and
    refuses to extrapolate beyond the sampled range.
    """

    def __init__(self, *, fn=None, xs=None, values=None):
        if (fn is None) == (xs is None):
            raise ValueError("provide either a rule or a table, not both")
        self._fn = fn
        if fn is not None:
            self._log_xs = None
            return
        xs = np.asarray(xs, dtype=float)
        values = np.asarray(values, dtype=float)
        if xs.ndim != 1 or xs.shape != values.shape or xs.size < 2:
            raise ValueError("table needs two equal-length 1-d arrays with >= 2 rows")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(values))):
            raise ValueError("table entries must be finite")
        if not np.all(np.diff(xs) > 0.0):
            raise ValueError("table abscissae must be strictly increasing")
        if not np.all(xs > 0.0):
            raise ValueError("table abscissae must be positive")
        if not np.all(values > 0.0):
            raise ValueError("table values must be positive")
        self._log_xs = np.log(xs)
        self._log_vs = np.log(values)
        self.x_min = float(xs[0])
        self.x_max = float(xs[-1])

    @classmethod
    def from_rule(cls, fn: Callable[[float], float]) -> "SampledFunction":
        return cls(fn=fn)

    @classmethod
    def from_table(cls, xs: Sequence[float], values: Sequence[float]) -> "SampledFunction":
        return cls(xs=xs, values=values)

    @property
    def is_table(self) -> bool:
        return self._log_xs is not None

    def __call__(self, x: float) -> float:
        if self._fn is not None:
            return float(self._fn(x))
        if not (x > 0.0):
            raise TableRangeError(f"table lookup needs x > 0, got {x!r}")
        if x < self.x_min or x > self.x_max:
            raise TableRangeError(
                f"x={x!r} outside table range [{self.x_min}, {self.x_max}]"
            )
        return float(math.exp(np.interp(math.log(x), self._log_xs, self._log_vs)))


@dataclass(frozen=True)
class LimitScheme:
    """Geometric evaluation grid x0 * ratio^n with a stability-window stop."""

    x0: float = 10.0
    ratio: float = 2.0
    max_steps: int = 40
    tol: float = 1e-6
    stability_window: int = 3

    def __post_init__(self) -> None:
        if not (self.x0 > 0.0 and math.isfinite(self.x0)):
            raise ValueError("x0 must be positive")
        if not (self.ratio > 1.0 and math.isfinite(self.ratio)):
            raise ValueError("ratio must exceed 1")
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")
        if not (self.tol > 0.0):
            raise ValueError("tol must be positive")
        if self.stability_window < 2:
            raise ValueError("stability_window must be >= 2")


@dataclass
class EstimationResult:
    value: float
    converged: bool
    last_delta: float
    steps_used: int


def _positive(name: str, v: float) -> float:
    if not (v > 0.0 and math.isfinite(v)):
        raise DomainError(f"{name} must be positive and finite, got {v!r}")
    return v


def karamata_op(f: Callable[[float], float], t: float, x: float) -> float:
    """Multiplicative ratio f(x*t)/f(x); f must be positive at both points."""
    if not (x > 0.0 and t > 0.0):
        raise DomainError(f"karamata_op needs x > 0 and t > 0, got x={x!r}, t={t!r}")
    fx = _positive("f(x)", f(x))
    fxt = _positive("f(x*t)", f(x * t))
    return fxt / fx


def eta_local(phi: Callable[[float], float], t: float, x: float) -> float:
    """Self-scaling ratio of the auxiliary: phi(x + t*phi(x))/phi(x)."""
    px = _positive("phi(x)", phi(x))
    return _positive("phi(x + t*phi(x))", phi(x + t * px)) / px


def beurling_op(
    f: Callable[[float], float], phi: Callable[[float], float], t: float, x: float
) -> float:
    """Flow ratio f(x + t*phi(x))/f(x)."""
    px = _positive("phi(x)", phi(x))
    y = x + t * px
    fx = _positive("f(x)", f(x))
    return _positive("f(x + t*phi(x))", f(y)) / fx


def general_op(
    f: Callable[[float], float],
    phi: Callable[[float], float],
    h: Callable[[float], float],
    t: float,
    x: float,
) -> float:
    """Normalised difference (f(x + t*phi(x)) - f(x))/h(x)."""
    px = _positive("phi(x)", phi(x))
    hx = _positive("h(x)", h(x))
    return (f(x + t * px) - f(x)) / hx


def cocycle_residual_karamata(
    f: Callable[[float], float], s: float, t: float, x: float
) -> float:
    """Defect of K(s*t, x) = K(s, x*t) * K(t, x); exactly zero in real arithmetic."""
    lhs = karamata_op(f, s * t, x)
    rhs = karamata_op(f, s, x * t) * karamata_op(f, t, x)
    return lhs - rhs


def cocycle_residual_beurling(
    f: Callable[[float], float],
    phi: Callable[[float], float],
    s: float,
    t: float,
    x: float,
) -> float:
    """Defect of K(t o s, x) = K(s, x + t*phi(x)) * K(t, x), where the first
    argument combines as t o s = t + s * eta_local(phi, t, x)."""
    ts = t + s * eta_local(phi, t, x)
    lhs = beurling_op(f, phi, ts, x)
    xt = x + t * phi(x)
    rhs = beurling_op(f, phi, s, xt) * beurling_op(f, phi, t, x)
    return lhs - rhs


def cocycle_residual_general(
    f: Callable[[float], float],
    phi: Callable[[float], float],
    h: Callable[[float], float],
    s: float,
    t: float,
    x: float,
) -> float:
    """Defect of the normalised-difference cocycle

        K(t o s, x) = K(s, x + t*phi(x)) * h(x + t*phi(x))/h(x) + K(t, x)

    with t o s = t + s * eta_local(phi, t, x); exactly zero in real arithmetic.
    """
    ts = t + s * eta_local(phi, t, x)
    lhs = general_op(f, phi, h, ts, x)
    xt = x + t * phi(x)
    rhs = general_op(f, phi, h, s, xt) * beurling_op(h, phi, t, x) + general_op(f, phi, h, t, x)
    return lhs - rhs


def estimate_limit(op_curve: Callable[[float], float], scheme: LimitScheme) -> EstimationResult:
    """Evaluate a curve along x0 * ratio^n and stop once the last
    ``stability_window`` values agree pairwise within tol (absolute plus
    relative, normalised by 1 + |last value|)."""
    window: list[float] = []
    last = math.nan
    delta = math.inf
    steps = 0
    for n in range(scheme.max_steps):
        x = scheme.x0 * scheme.ratio**n
        try:
            v = float(op_curve(x))
        except Exception as exc:  # noqa: BLE001 - annotate with grid position
            raise LimitEvaluationError(n, x, exc) from exc
        steps = n + 1
        window.append(v)
        if len(window) > scheme.stability_window:
            window.pop(0)
        last = v
        if len(window) == scheme.stability_window:
            spread = max(window) - min(window)
            delta = spread / (1.0 + abs(last))
            if delta <= scheme.tol:
                return EstimationResult(last, True, delta, steps)
    return EstimationResult(last, False, delta, steps)


def estimate_rho(
    phi: Callable[[float], float], t_probe: float, scheme: LimitScheme = LimitScheme()
) -> EstimationResult:
    """Estimate the group parameter of the auxiliary: limit of
    (eta_local(phi, t, x) - 1)/t along the scheme grid."""
    if t_probe == 0.0:
        raise DomainError("t_probe must be non-zero")
    return estimate_limit(
        lambda x: (eta_local(phi, t_probe, x) - 1.0) / t_probe, scheme
    )


def _estimate_points(curves, scheme):
    out = []
    for t, curve in curves:
        try:
            out.append((t, estimate_limit(curve, scheme)))
        except LimitEvaluationError as err:
            # per-point failures become flags, not errors
            out.append((t, EstimationResult(math.nan, False, math.inf, err.step)))
    return out


def estimate_kernel(
    f: Callable[[float], float],
    phi: Callable[[float], float],
    h: Callable[[float], float],
    t_grid: Sequence[float],
    scheme: LimitScheme = LimitScheme(),
) -> list[tuple[float, EstimationResult]]:
    """Limit of the normalised-difference operator at each t in the grid."""
    curves = [(t, (lambda tt: lambda x: general_op(f, phi, h, tt, x))(t)) for t in t_grid]
    return _estimate_points(curves, scheme)


def estimate_beurling(
    f: Callable[[float], float],
    phi: Callable[[float], float],
    t_grid: Sequence[float],
    scheme: LimitScheme = LimitScheme(),
) -> list[tuple[float, EstimationResult]]:
    """Limit of the flow-ratio operator at each t in the grid."""
    curves = [(t, (lambda tt: lambda x: beurling_op(f, phi, tt, x))(t)) for t in t_grid]
    return _estimate_points(curves, scheme)


def estimate_karamata(
    f: Callable[[float], float],
    lambda_grid: Sequence[float],
    scheme: LimitScheme = LimitScheme(),
) -> list[tuple[float, EstimationResult]]:
    """Multiplicative kernel limits f(x*l)/f(x), driven through the
    normalised-difference operator on the exp/log scale."""

    def flog(y: float) -> float:
        return math.log(_positive("f", f(math.exp(y))))

    one = lambda _y: 1.0

    def make_curve(lam: float):
        s = math.log(_positive("lambda", lam))
        return lambda x: general_op(flog, one, one, s, math.log(x))

    results = []
    for lam, res in _estimate_points([(l, make_curve(l)) for l in lambda_grid], scheme):
        value = math.exp(res.value) if math.isfinite(res.value) else math.nan
        results.append((lam, EstimationResult(value, res.converged, res.last_delta, res.steps_used)))
    return results


def fit_kappa(
    samples: Sequence[tuple[float, float]],
    rho: PopaParam,
    sigma: PopaParam,
) -> tuple[float, float]:
    """Least-squares index: minimise sum (iso_log_sigma(K) - kappa*iso_log_rho(t))^2.

    Returns (kappa_hat, rms_residual).  Needs at least one sample with t away
    from the identity.
    """
    if not samples:
        raise ValueError("empty sample set")
    ws = []
    wk = []
    for t, k in samples:
        ws.append(iso_log(rho, t))
        wk.append(iso_log(sigma, k))
    sxx = math.fsum(w * w for w in ws)
    if sxx == 0.0:
        raise ValueError("degenerate sample set: all abscissae at the identity")
    sxy = math.fsum(w * v for w, v in zip(ws, wk))
    kappa = sxy / sxx
    rms = math.sqrt(math.fsum((v - kappa * w) ** 2 for w, v in zip(ws, wk)) / len(ws))
    return kappa, rms


def two_point_index(
    lambda1: float, g1: float, lambda2: float, g2: float, tol: float = 1e-9
) -> tuple[float, bool]:
    """Index read-out rho_i = log g_i / log lambda_i from two probes.

    Returns (mean index, consistency flag).  A warning is emitted when
    log(lambda1)/log(lambda2) is a small-denominator rational, in which case
    the two probes carry dependent information.
    """
    for name, v in (("lambda1", lambda1), ("g1", g1), ("lambda2", lambda2), ("g2", g2)):
        _positive(name, v)
    l1, l2 = math.log(lambda1), math.log(lambda2)
    if l1 == 0.0 or l2 == 0.0:
        raise DomainError("probe ratios must differ from 1")
    r1 = math.log(g1) / l1
    r2 = math.log(g2) / l2
    ratio = l1 / l2
    frac = Fraction(ratio).limit_denominator(16)
    if frac != 0 and abs(ratio - float(frac)) <= 1e-9 * abs(ratio):
        warnings.warn(
            f"log({lambda1})/log({lambda2}) is close to {frac.numerator}/{frac.denominator}; "
            "the probes are multiplicatively dependent",
            RationalRatioWarning,
            stacklevel=2,
        )
    return 0.5 * (r1 + r2), abs(r1 - r2) <= tol


_MAX_PARTITION = 10**8


def beck_partition(param: PopaParam, delta: float, u: float) -> list[float]:
    """Partition points delta^(0 o), ..., delta^(i o) where i is the unique
    index with delta^((i-1) o) <= u < delta^(i o)."""
    ident = 1.0 if param.is_infinite else 0.0
    delta = float(delta)
    u = float(u)
    step_w = iso_log(param, delta)
    if not step_w > 0.0:
        raise DomainError(f"delta={delta!r} does not step away from the identity")
    u_w = iso_log(param, u)
    if u_w < 0.0:
        raise DomainError(f"u={u!r} lies below the identity {ident}")
    # candidate index from the additive scale, then correct the boundary
    i = max(1, math.floor(u_w / step_w) + 1)
    while i > 1 and power(param, delta, i - 1) > u:
        i -= 1
    while power(param, delta, i) <= u:
        i += 1
        if i > _MAX_PARTITION:
            raise DomainError("partition is too fine (more than 1e8 cells)")
    if i > _MAX_PARTITION:
        raise DomainError("partition is too fine (more than 1e8 cells)")
    return [power(param, delta, m) for m in range(i + 1)]


def beck_riemann_sum(
    g: Callable[[float], float], param: PopaParam, delta: float, u: float
) -> float:
    """Riemann sum of g/eta over the partition of [identity, u] induced by the
    o-iterates of delta, the final cell clipped at u.  Converges to the
    integral of g(x)/eta(x) dx at first order in delta."""
    pts = beck_partition(param, delta, u)
    terms = []
    prev = pts[0]
    for p in pts[1:]:
        node = min(p, u)
        if node <= prev:
            break
        terms.append(g(node) / eta(param, node) * (node - prev))
        prev = node
    return math.fsum(terms)


def goldie_sum(
    K_delta: float,
    g: Callable[[float], float],
    param: PopaParam,
    delta: float,
    i: int,
) -> float:
    """Discrete functional-equation sum K_delta * sum_{m=1..i} g(delta^((m-1) o))."""
    i = int(i)
    if i < 0:
        raise DomainError(f"i must be >= 0, got {i}")
    if i > _MAX_PARTITION:
        raise DomainError("sum is too long (more than 1e8 terms)")
    return K_delta * math.fsum(g(power(param, delta, m)) for m in range(i))
