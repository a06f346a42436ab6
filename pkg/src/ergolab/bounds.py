"""Quantitative fluctuation and stability bounds for nonexpansive averages.

All formulas are exact integer-valued expressions (no asymptotic forms).
Floors and ceilings of floating-point quantities are taken after rounding
the operand to 12 significant digits, so a value that is an integer up to
accumulated rounding is treated as that integer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._scan import PointsView, first_violation
from .averages import AverageTrajectory
from .errors import HorizonExhaustedError, InvalidInputError, PreconditionError
from .spaces import SpaceDescriptor, batch_norm_p

__all__ = [
    "StabilityParameters",
    "DriftReport",
    "StabilityWindowReport",
    "floor12",
    "ceil12",
    "stability_parameters",
    "window_fluctuation_bound",
    "fluctuation_bound_nonexpansive",
    "drift_bound_check",
    "stability_window_check",
    "earliest_stable_start",
]


def _round12(x: float) -> float:
    return float(f"{x:.12g}")


def floor12(x: float) -> int:
    """Floor after rounding to 12 significant digits."""
    return math.floor(_round12(x))


def ceil12(x: float) -> int:
    """Ceiling after rounding to 12 significant digits."""
    return math.ceil(_round12(x))


@dataclass(frozen=True)
class StabilityParameters:
    """Derived constants for the norm-stability window check.

    M = ceil(16*||x||/eps) and gamma = (eps/8) * K * (eps/(8*||x||))^(p-1),
    i.e. gamma = (eps/8) * eta_tilde(eps/(8*||x||)) for the power-type modulus
    eta_tilde(t) = K * t^(p-1). rho = ||x||/eps is kept for reporting.
    """

    norm_x: float
    eps: float
    p: float
    K: float
    M: int
    gamma: float
    rho: float


def stability_parameters(norm_x: float, eps: float, desc: SpaceDescriptor) -> StabilityParameters:
    if not (norm_x > 0.0 and math.isfinite(norm_x)):
        raise InvalidInputError(f"need ||x|| > 0, got {norm_x}")
    if not (eps > 0.0 and math.isfinite(eps)):
        raise InvalidInputError(f"need eps > 0, got {eps}")
    m = ceil12(16.0 * norm_x / eps)
    gamma = (eps / 8.0) * desc.K * (eps / (8.0 * norm_x)) ** (desc.p - 1.0)
    return StabilityParameters(
        norm_x=float(norm_x),
        eps=float(eps),
        p=desc.p,
        K=desc.K,
        M=m,
        gamma=gamma,
        rho=norm_x / eps,
    )


def window_fluctuation_bound(norm_x: float, eps: float, alpha: float) -> int:
    """floor(4 * ln(alpha) * ||x||/eps): cap on eps-fluctuations inside
    [N, alpha*N] for averages of a nonexpansive operator.

    Natural logarithm: the derivation consumes ln(1 + eps/(2||x||)) >
    eps/(4||x||), which holds precisely for eps < 2||x|| with ln.
    """
    if not (0.0 < eps < 2.0 * norm_x):
        raise PreconditionError(f"need 0 < eps < 2*||x||, got eps={eps}, ||x||={norm_x}")
    if alpha < 1.0:
        raise InvalidInputError(f"need alpha >= 1, got {alpha}")
    return floor12(4.0 * math.log(alpha) * norm_x / eps)


def fluctuation_bound_nonexpansive(norm_x: float, eps: float, desc: SpaceDescriptor) -> int:
    """Total eps-fluctuation bound for the full average sequence:

        floor(4 ln(M) ||x||/eps)
      + floor(||x||/gamma) * floor(4 ln(2M) ||x||/eps)
      + floor(||x||/gamma)

    with M and gamma from `stability_parameters`. Finite and fully explicit;
    the count of the actual sequence never exceeds it.
    """
    if not (0.0 < eps < 2.0 * norm_x):
        raise PreconditionError(f"need 0 < eps < 2*||x||, got eps={eps}, ||x||={norm_x}")
    par = stability_parameters(norm_x, eps, desc)
    drops = floor12(norm_x / par.gamma)
    head = floor12(4.0 * math.log(par.M) * norm_x / eps)
    per_window = floor12(4.0 * math.log(2.0 * par.M) * norm_x / eps)
    return head + drops * per_window + drops


@dataclass(frozen=True)
class DriftReport:
    """Worst slack of ||x_(n+k) - x_n|| <= 2k*||x||/(n+k) over all pairs."""

    max_excess: float
    worst_pair: tuple[int, int]


def drift_bound_check(traj: AverageTrajectory) -> DriftReport:
    """Verify the two-index drift inequality on every pair of the trajectory.

    Valid for nonexpansive operators; a certificate with B2 > 1 is rejected
    up front, an absent certificate is trusted to the caller.
    """
    cert = getattr(traj.operator, "certificate", None)
    if cert is not None and cert.B2 > 1.0:
        raise PreconditionError(f"operator certifies B2 = {cert.B2} > 1: not nonexpansive")
    norm_x = traj.x.norm()
    pts = traj.points
    n_pts = pts.shape[0]
    worst, worst_pair = -math.inf, (1, 1)
    ns = np.arange(1, n_pts + 1, dtype=np.float64)
    for k in range(1, n_pts):
        dist = batch_norm_p(pts[k:] - pts[:-k], traj.p)
        excess = dist - (2.0 * k * norm_x) / ns[k:]
        i = int(np.argmax(excess))
        if excess[i] > worst:
            worst = float(excess[i])
            worst_pair = (i + 1, i + 1 + k)
    return DriftReport(worst, worst_pair)


@dataclass(frozen=True)
class StabilityWindowReport:
    """Outcome of the norm-stability window check."""

    window: tuple[int, int]  # [M*N, floor(u/2)], empty when start > end
    violations: tuple[tuple[int, int], ...]
    truncated: bool  # True when more violations exist than were collected


_MAX_VIOLATIONS = 16


def stability_window_check(
    traj: AverageTrajectory, params: StabilityParameters, n_start: int, u: int
) -> StabilityWindowReport:
    """Check a norm-stable trajectory's late window for eps-separated pairs.

    Hypothesis (verified first, PreconditionError when it fails): every
    m <= u has ||x_m|| >= ||x_(n_start)|| - gamma. Conclusion checked: no two
    indices in [M*n_start, floor(u/2)] are eps-separated. The violation list
    is expected empty; at most 16 pairs are collected before truncating.
    """
    if n_start < 1:
        raise InvalidInputError(f"need n_start >= 1, got {n_start}")
    if u < n_start:
        raise InvalidInputError(f"need u >= n_start, got u={u}, n_start={n_start}")
    if u > traj.horizon:
        raise HorizonExhaustedError(
            f"hypothesis range [1, {u}] exceeds horizon {traj.horizon}",
            checked_up_to=traj.horizon,
        )
    norms = traj.norms()
    floor_level = norms[n_start - 1] - params.gamma
    bad = np.flatnonzero(norms[:u] < floor_level)
    if bad.size:
        m = int(bad[0]) + 1
        raise PreconditionError(
            f"hypothesis fails at m={m}: ||x_m|| = {norms[m - 1]:.6g} < "
            f"||x_{n_start}|| - gamma = {floor_level:.6g}"
        )
    lo = params.M * n_start
    hi = u // 2
    if lo > hi:
        return StabilityWindowReport((lo, hi), (), False)
    view = PointsView(traj.points, traj.p)
    violations: list[tuple[int, int]] = []
    anchor = lo - 1
    truncated = False
    while anchor < hi - 1:
        hit = first_violation(view, params.eps, anchor, hi - 1)
        if hit is None:
            break
        i_first, _, j = hit
        violations.append((i_first + 1, j + 1))
        if len(violations) >= _MAX_VIOLATIONS:
            truncated = first_violation(view, params.eps, j, hi - 1) is not None
            break
        anchor = j
    return StabilityWindowReport((lo, hi), tuple(violations), truncated)


def earliest_stable_start(traj: AverageTrajectory, gamma: float, u: int) -> int:
    """Smallest n with ||x_m|| >= ||x_n|| - gamma for every m <= u.

    This is the first index whose norm is within gamma of the running-window
    minimum, i.e. the natural n_start for `stability_window_check`.
    """
    if not 1 <= u <= traj.horizon:
        raise InvalidInputError(f"need 1 <= u <= horizon, got u={u}")
    norms = traj.norms()[:u]
    floor_level = float(norms.min()) + gamma
    hits = np.flatnonzero(norms <= floor_level)
    return int(hits[0]) + 1
