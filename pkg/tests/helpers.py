"""Shared draw helpers for the test suite."""
from __future__ import annotations

import math

from regvar.popa import PopaParam, PopaPoint, iso_exp

PARAM_SET = [PopaParam(0.0), PopaParam(0.5), PopaParam(1.0), PopaParam(7.0), PopaParam(math.inf)]


def point_from_w(param: PopaParam, w: float) -> PopaPoint:
    """Map an additive coordinate into the carrier; w = 0 is the identity."""
    return PopaPoint(param, iso_exp(param, w))


def draw_points(rng, param: PopaParam, n: int, lo: float = -2.0, hi: float = 2.0):
    """n in-carrier points with additive coordinates uniform in [lo, hi]."""
    return [point_from_w(param, w) for w in rng.uniform(lo, hi, size=n)]


def rel_residual(lhs: float, rhs: float, *extras: float) -> float:
    scale = max(1.0, abs(lhs), abs(rhs), *map(abs, extras)) if extras else max(1.0, abs(lhs), abs(rhs))
    return abs(lhs - rhs) / scale
