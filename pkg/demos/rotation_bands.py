#!/usr/bin/env python3
"""Watch the rotation family fluctuate once per dyadic index band.

The operator rotates coordinate j by pi/2^(j-1), so coordinate j needs
about 2^j steps to average out. The result: every interval [2^(k-1), 2^k]
of average indices contains a pair separated by eps, all the way up to
k = u. Raising the dimension buys more fluctuations at the same eps.
"""

import argparse

from ergolab import (
    build_rotation_counterexample,
    count_fluctuations,
    ergodic_averages,
    fluctuation_in_dyadic_interval,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=float, default=2.0, help="norm exponent (>= 2)")
    ap.add_argument("--u", type=int, default=8, help="number of coordinates")
    args = ap.parse_args()

    built = build_rotation_counterexample(args.p, args.u)
    horizon = 2**args.u
    traj = ergodic_averages(built.operator, built.x, horizon)

    print(f"rotation family: u = {args.u}, p = {args.p}, eps = {built.eps:.6g}, "
          f"horizon = {horizon}")
    print(f"start point norm = {built.x.norm():.12g}")
    print()
    print("band k   interval            eps-separated pair present")
    for k in range(1, args.u + 1):
        lo, hi = 2 ** (k - 1), 2**k
        hit = fluctuation_in_dyadic_interval(traj, built.eps, k)
        print(f"{k:6d}   [{lo:6d}, {hi:6d}]    {'yes' if hit else 'no'}")

    report = count_fluctuations(traj, built.eps)
    print()
    print(f"greedy fluctuation count over the whole horizon: {report.count}")
    print(f"first witnesses: {report.witnesses[:6]}")


if __name__ == "__main__":
    main()
