"""First-order convergence of the clipped group Riemann sum.

Sums the Haar weight 1/eta over Beck partitions of [identity, u] at a finite
group parameter for a sequence of halving mesh parameters and tabulates the
error against the exact additive length log(1 + rho*u)/rho, confirming the
error itself halves.
"""
from __future__ import annotations

import argparse
import math

from regvar.asymptotics import beck_riemann_sum
from regvar.popa import PopaParam


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rho", type=float, default=1.0)
    ap.add_argument("--u", type=float, default=1.0, help="upper endpoint")
    ap.add_argument("--halvings", type=int, default=8)
    args = ap.parse_args()

    param = PopaParam(args.rho)
    one = lambda _t: 1.0
    exact = args.u if args.rho == 0.0 else math.log1p(args.rho * args.u) / args.rho

    print(f"{'delta':>12}  {'sum':>18}  {'error':>12}  {'ratio':>7}")
    prev_err = None
    delta = 0.1
    for _ in range(args.halvings):
        s = beck_riemann_sum(one, param, delta, args.u)
        err = abs(s - exact)
        ratio = f"{prev_err / err:>7.3f}" if prev_err and err else f"{'-':>7}"
        print(f"{delta:>12.6f}  {s:>18.12f}  {err:>12.3e}  {ratio}")
        prev_err = err
        delta *= 0.5
    print(f"\nexact value: {exact:.12f}")


if __name__ == "__main__":
    main()
