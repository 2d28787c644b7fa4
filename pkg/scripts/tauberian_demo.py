"""Localization of a flow convolution against a slowly oscillating target.

Convolves the unit-mass density F = 0.5 * 1_[-1,1] against
H(u) = c + sin(u)/(1+u) along the flow of phi(x) = x and tabulates how the
smoothed value settles on the constant c as x grows.
"""
from __future__ import annotations

import argparse
import math

from regvar.haar import beurling_convolution
from regvar.quadrature import QuadratureSpec


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--c", type=float, default=2.0, help="limit constant of the target")
    ap.add_argument("--decades", type=int, default=7, help="largest probe 10^decades")
    ap.add_argument("--tol", type=float, default=1e-4, help="quadrature tolerance")
    args = ap.parse_args()

    F = lambda t: 0.5 if abs(t) <= 1.0 else 0.0
    H = lambda u: args.c + math.sin(u) / (1.0 + u)
    phi = lambda x: x
    spec = QuadratureSpec(abs_tol=args.tol, rel_tol=args.tol)

    print(f"{'x':>12}  {'smoothed':>18}  {'deviation':>12}")
    for k in range(1, args.decades + 1):
        x = 10.0**k
        v = beurling_convolution(F, H, phi, x, spec)
        print(f"{x:>12.4g}  {v:>18.12f}  {abs(v - args.c):>12.3e}")
    print(f"\ntarget constant: {args.c}")


if __name__ == "__main__":
    main()
