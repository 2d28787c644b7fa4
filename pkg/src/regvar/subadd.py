"""Subadditivity and boundedness diagnostics for maps between Popa groups.

A map ``S : G_rho -> G_sigma`` is o-subadditive when
``S(x o_rho y) <= S(x) o_sigma S(y)``.  The checks here are grid probes: they
cannot prove subadditivity, but a reported violation is a genuine
counterexample pair and violations found on a grid persist on any refinement
containing that pair.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from regvar.kernels import KernelParams, kernel_eval
from regvar.popa import DomainError, PopaParam, PopaPoint, circle, inverse

__all__ = [
    "GridSpec",
    "SubaddReport",
    "VacuousPremiseWarning",
    "subadditivity_check",
    "additively_bounded_check",
    "heiberg_seneta_probe",
    "default_probe_sequence",
    "sandwich_bound_check",
]


class VacuousPremiseWarning(UserWarning):
    """The premise of a conditional check failed, so it passed vacuously."""


@dataclass(frozen=True)
class GridSpec:
    """Evaluation grid on [lo, hi]; geometric spacing needs lo > 0."""

    lo: float
    hi: float
    n: int
    spacing: str = "linear"

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo < self.hi):
            raise ValueError(f"need lo < hi, got ({self.lo}, {self.hi})")
        if self.n < 2:
            raise ValueError("n must be >= 2")
        if self.spacing not in ("linear", "geometric"):
            raise ValueError(f"spacing must be 'linear' or 'geometric', got {self.spacing!r}")
        if self.spacing == "geometric" and not self.lo > 0.0:
            raise ValueError("geometric spacing needs lo > 0")

    def points(self) -> np.ndarray:
        if self.spacing == "linear":
            return np.linspace(self.lo, self.hi, self.n)
        return np.geomspace(self.lo, self.hi, self.n)


@dataclass
class SubaddReport:
    holds: bool
    worst_violation: float
    worst_pair: tuple[float, float]
    pairs_checked: int
    pairs_skipped: int = 0


def _codomain_value(S: Callable[[float], float], sigma: PopaParam, x: float) -> PopaPoint:
    v = S(x)
    try:
        return PopaPoint(sigma, v)
    except DomainError as exc:
        raise DomainError(f"S({x!r}) = {v!r} is outside the codomain carrier") from exc


def subadditivity_check(
    S: Callable[[float], float],
    rho: PopaParam,
    sigma: PopaParam,
    grid: GridSpec,
    tol: float = 1e-10,
) -> SubaddReport:
    """Probe S(x o y) <= S(x) o S(y) over all grid pairs whose combination
    stays inside [lo, hi]; out-of-window pairs are skipped and counted."""
    pts = grid.points()
    gpts = [PopaPoint(rho, float(p)) for p in pts]
    svals = [_codomain_value(S, sigma, p.value) for p in gpts]

    worst = 0.0
    worst_pair = (math.nan, math.nan)
    checked = 0
    skipped = 0
    for i, x in enumerate(gpts):
        for j, y in enumerate(gpts):
            z = circle(x, y).value
            if z < grid.lo or z > grid.hi:
                skipped += 1
                continue
            bound = circle(svals[i], svals[j]).value
            sz = _codomain_value(S, sigma, z).value
            violation = sz - bound
            checked += 1
            if violation > worst:
                worst = violation
                worst_pair = (x.value, y.value)
    return SubaddReport(worst <= tol, worst, worst_pair, checked, skipped)


def additively_bounded_check(
    S: Callable[[float], float],
    kp: KernelParams,
    sample_set: Sequence[float],
    tol: float = 1e-10,
) -> SubaddReport:
    """Pointwise check S(t) <= K_kappa(t) + tol over the sample set."""
    worst = 0.0
    worst_pair = (math.nan, math.nan)
    for t in sample_set:
        t = float(t)
        excess = S(t) - kernel_eval(kp, t)
        if excess > worst:
            worst = excess
            worst_pair = (t, t)
    return SubaddReport(worst <= tol, worst, worst_pair, len(sample_set), 0)


def default_probe_sequence(n: int = 40) -> list[float]:
    """The dyadic probe u_k = 2^-k, k = 1..n."""
    return [2.0**-k for k in range(1, n + 1)]


def heiberg_seneta_probe(
    S: Callable[[float], float],
    sequence: Sequence[float] | None = None,
    tol: float = 1e-4,
) -> tuple[float, bool]:
    """Estimate limsup of S along a sequence decreasing to 0.

    Returns (estimate, passes) where the estimate is the maximum of S over
    the tail half of the sequence and passes means estimate <= tol.
    """
    seq = default_probe_sequence() if sequence is None else [float(u) for u in sequence]
    if len(seq) < 8:
        raise ValueError("probe sequence must have at least 8 points")
    arr = np.asarray(seq)
    if not (np.all(arr > 0.0) and np.all(np.diff(arr) < 0.0)):
        raise ValueError("probe sequence must be positive and strictly decreasing")
    tail = seq[len(seq) // 2 :]
    estimate = max(S(u) for u in tail)
    return estimate, estimate <= tol


def sandwich_bound_check(
    S: Callable[[float], float],
    rho: PopaParam,
    sigma: PopaParam,
    a: float,
    b: float,
    delta: float,
    M: float,
    probes: int = 33,
) -> bool:
    """Propagate a local bound: if S <= M on the ball B_delta(a), then on
    B_delta(b) the two-sided bound

        S(b o a) o inv(M)  <=  S(x)  <=  S(b o inv(a)) o M

    must hold (group operations of the codomain on the outside).  If the
    premise already fails on the probe points the check passes vacuously,
    with a warning.
    """
    if probes < 2:
        raise ValueError("probes must be >= 2")
    if not (delta > 0.0 and math.isfinite(delta)):
        raise DomainError(f"delta must be positive, got {delta!r}")
    pa = PopaPoint(rho, a)
    pb = PopaPoint(rho, b)
    if not pb.value > 0.0:
        raise DomainError(f"b must be positive, got {b!r}")
    Mpt = PopaPoint(sigma, M)

    offsets = np.linspace(-delta, delta, probes + 2)[1:-1]
    ball_a = [pa.value + o for o in offsets]
    eps = 1e-12 * (1.0 + abs(M))
    if any(S(x) > M + eps for x in ball_a):
        warnings.warn(
            f"premise S <= {M} fails on B_{delta}({a}); sandwich passes vacuously",
            VacuousPremiseWarning,
            stacklevel=2,
        )
        return True

    s_ba = _codomain_value(S, sigma, circle(pb, pa).value)
    s_bainv = _codomain_value(S, sigma, circle(pb, inverse(pa)).value)
    lower = circle(s_ba, inverse(Mpt)).value
    upper = circle(s_bainv, Mpt).value
    ball_b = [pb.value + o for o in offsets]
    slack = 1e-12 * (1.0 + abs(lower) + abs(upper))
    for x in ball_b:
        v = S(x)
        if v < lower - slack or v > upper + slack:
            return False
    return True
