#!/usr/bin/env python3
"""Climb the dyadic filtration on one random finitely supported function.

Shows the conditional expectations flattening the function level by level,
the martingale differences telescoping back to it, and the measured
constants of the three decomposition inequalities.
"""

import numpy as np

from ergolab import (
    SeqFunction,
    conditional_expectation,
    lpb_norm,
    martingale_differences,
    verify_decomposition_inequalities,
)


def main():
    rng = np.random.default_rng(3)
    f = SeqFunction(-5, rng.standard_normal(24) + 1j * rng.standard_normal(24), 2.0)
    print(f"f: window [{f.lo}, {f.hi}), ||f|| = {lpb_norm(f):.6f}")

    print("\nlevel n, block 2^n, ||E_n f||:")
    for n in range(0, 7):
        en = conditional_expectation(f, n)
        print(f"  n={n}: block {1 << n:3d}, norm {lpb_norm(en):.6f}")

    diffs = martingale_differences(f, 6)
    total = diffs[0]
    for d in diffs[1:]:
        total = total + d
    residual = f - conditional_expectation(f, 6)
    print(f"\ntelescoping gap ||sum d_n - (f - E_6 f)|| = "
          f"{lpb_norm(total - residual):.2e}")

    print("\ndecomposition constants (each sum over ||f||^2):")
    rep = verify_decomposition_inequalities(f, "martingale", levels=list(range(7)))
    print(f"  martingale levels 0..6:        ratio {rep.ratio:.6f}")
    ts = [2**k - 1 for k in range(1, 7)]
    rep = verify_decomposition_inequalities(f, "average_vs_expectation", ts=ts)
    print(f"  averages vs expectations:      ratio {rep.ratio:.6f}")
    pows = [2**k for k in range(0, 7)]
    rep = verify_decomposition_inequalities(f, "short_increments", ts=pows)
    print(f"  short in-band increments:      ratio {rep.ratio:.6f}")


if __name__ == "__main__":
    main()
