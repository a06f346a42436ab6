#!/usr/bin/env python3
"""Compare measured fluctuation counts against the explicit bound.

The bound is astronomically generous on tame trajectories; the point of
printing both is to see the gap and to confirm the measured side never
crosses it. Window counts are checked against the per-window cap too:
inside [N, alpha*N] the count can never exceed floor(4 ln(alpha) ||x||/eps).
"""

import math

import numpy as np

from ergolab import (
    RotationProduct,
    Vector,
    count_fluctuations,
    descriptor_preset,
    ergodic_averages,
    fluctuation_bound_nonexpansive,
    window_fluctuation_bound,
)


def main():
    rng = np.random.default_rng(7)
    desc = descriptor_preset("hilbert")
    horizon = 512

    print(f"{'eps':>6} {'measured':>9} {'bound':>12}")
    angles = rng.uniform(0.25, math.pi, 3)
    z = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    x = Vector(z / Vector(z, p=2).norm(), p=2)
    traj = ergodic_averages(RotationProduct(angles), x, horizon)
    for eps in (1.0, 0.5, 0.25, 0.125):
        measured = count_fluctuations(traj, eps).count
        bound = fluctuation_bound_nonexpansive(1.0, eps, desc)
        print(f"{eps:6.3f} {measured:9d} {bound:12d}")

    print()
    print("windowed counts, eps = 0.25:")
    print(f"{'window':>14} {'measured':>9} {'cap':>5}")
    for n0, alpha in ((4, 2.0), (16, 2.0), (16, 4.0), (64, 4.0)):
        hi = min(int(alpha * n0), horizon)
        wcount = count_fluctuations(traj.points[n0 - 1 : hi], 0.25).count
        wcap = window_fluctuation_bound(1.0, 0.25, alpha)
        print(f"[{n0:4d}, {hi:5d}] {wcount:11d} {wcap:5d}")


if __name__ == "__main__":
    main()
