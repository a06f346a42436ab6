#!/usr/bin/env python3
"""Exercise the drift inequality and the norm-stability window.

First verifies ||x_(n+k) - x_n|| <= 2k||x||/(n+k) over every index pair of
an isometry trajectory, then finds the earliest stable start n and checks
that the window [M*n, u/2] holds no eps-separated pair.
"""

import numpy as np

from ergolab import (
    RotationProduct,
    Vector,
    descriptor_preset,
    drift_bound_check,
    earliest_stable_start,
    ergodic_averages,
    stability_parameters,
    stability_window_check,
)


def main():
    # the zero angle pins coordinate 1, so the average norms level off at
    # |x_1| instead of decaying forever and the stable start arrives early
    op = RotationProduct(np.array([0.0, 1.3, -0.45]))
    x = Vector(np.array([1.0, 0.6j, -0.3 + 0.2j]), p=2)
    u = 4096
    traj = ergodic_averages(op, x, u)

    drift = drift_bound_check(traj)
    print(f"drift excess over {u} averages: {drift.max_excess:.3e} "
          f"(worst pair {drift.worst_pair})")

    eps = 1.5
    par = stability_parameters(x.norm(), eps, descriptor_preset("hilbert"))
    print(f"\neps = {eps}: M = {par.M}, gamma = {par.gamma:.3e}")

    n0 = earliest_stable_start(traj, par.gamma, u)
    print(f"earliest stable start n = {n0}")

    rep = stability_window_check(traj, par, n0, u)
    lo, hi = rep.window
    if lo > hi:
        print(f"window [{lo}, {hi}] is empty at this horizon; "
              "nothing to scan")
    else:
        print(f"window [{lo}, {hi}]: {len(rep.violations)} violating pairs"
              + (" (truncated list)" if rep.truncated else ""))


if __name__ == "__main__":
    main()
