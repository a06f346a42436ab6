"""Running averages of operator powers along an orbit.

`ergodic_averages` produces the whole trajectory A_1 x, ..., A_N x where

    A_n x = (1/n) * (x + Tx + ... + T^(n-1) x),

computed from one pass over the orbit (a cumulative sum divided by n). For
rotation products the orbit itself comes from the closed form e^(i*n*theta),
and `rotation_average_closed_form` gives the scalar average directly so the
two routes can be checked against each other.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .operators import (
    CyclicShift,
    DenseMatrix,
    Operator,
    RotationProduct,
    ZShift,
    interleave_real,
)
from .spaces import Vector, batch_norm_p

__all__ = ["AverageTrajectory", "ergodic_averages", "orbit", "rotation_average_closed_form"]

# Above this horizon the plain cumulative sum's rounding can defeat the
# 1e-10 recurrence budget, so a compensated sum takes over.
_COMPENSATION_THRESHOLD = 1_000_000


@dataclass(frozen=True)
class AverageTrajectory:
    """The points A_1 x .. A_N x as rows of an immutable (N, u) array."""

    points: np.ndarray
    p: float
    operator: Operator
    x: Vector

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.complex128)
        if pts.ndim != 2 or pts.shape[0] == 0:
            raise InvalidInputError("trajectory needs at least one point")
        pts = pts.copy()
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @property
    def horizon(self) -> int:
        return self.points.shape[0]

    def __len__(self) -> int:
        return self.horizon

    def point(self, n: int) -> Vector:
        """A_n x, 1-based."""
        if not 1 <= n <= self.horizon:
            raise InvalidInputError(f"index {n} outside [1, {self.horizon}]")
        return Vector(self.points[n - 1], self.p)

    def norms(self) -> np.ndarray:
        """||A_n x|| for n = 1..N."""
        return batch_norm_p(self.points, self.p)

    def truncated(self, m: int) -> "AverageTrajectory":
        """The prefix trajectory A_1 x .. A_m x."""
        if not 1 <= m <= self.horizon:
            raise InvalidInputError(f"prefix length {m} outside [1, {self.horizon}]")
        return AverageTrajectory(self.points[:m], self.p, self.operator, self.x)


def orbit(op: Operator, x: Vector, n: int) -> np.ndarray:
    """The rows x, Tx, ..., T^(n-1) x. Closed forms for rotation and shift."""
    n = int(n)
    if n < 1:
        raise InvalidInputError(f"horizon must be >= 1, got {n}")
    if isinstance(op, ZShift):
        raise InvalidInputError("ZShift orbits live on integer-indexed functions")
    if x.dim != op.dim:
        raise InvalidInputError(f"operator dimension {op.dim} != vector dimension {x.dim}")

    if isinstance(op, RotationProduct):
        phases = np.exp(1j * np.outer(np.arange(n, dtype=np.float64), op.angles))
        return phases * x.components[None, :]
    if isinstance(op, CyclicShift):
        u = op.dim
        idx = (np.arange(u)[None, :] - np.arange(n)[:, None]) % u
        return x.components[idx]
    if isinstance(op, DenseMatrix):
        out = np.empty((n, x.dim), dtype=np.complex128)
        coords = interleave_real(x.components)
        for i in range(n):
            out[i] = coords[0::2] + 1j * coords[1::2]
            if i + 1 < n:
                coords = op.matrix @ coords
        return out
    raise InvalidInputError(f"unknown operator kind {type(op).__name__}")


def _compensated_cumsum(rows: np.ndarray) -> np.ndarray:
    """Kahan running sum down the rows; one row of compensation state."""
    out = np.empty_like(rows)
    total = np.zeros(rows.shape[1], dtype=rows.dtype)
    carry = np.zeros(rows.shape[1], dtype=rows.dtype)
    for i in range(rows.shape[0]):
        y = rows[i] - carry
        t = total + y
        carry = (t - total) - y
        total = t
        out[i] = total
    return out


def ergodic_averages(op: Operator, x: Vector, n: int) -> AverageTrajectory:
    """All averages A_1 x .. A_n x in one running-sum pass over the orbit."""
    rows = orbit(op, x, n)
    if n > _COMPENSATION_THRESHOLD:
        sums = _compensated_cumsum(rows)
    else:
        sums = np.cumsum(rows, axis=0)
    sums /= np.arange(1, n + 1, dtype=np.float64)[:, None]
    return AverageTrajectory(sums, x.p, op, x)


def rotation_average_closed_form(theta: float, n: int) -> complex:
    """Average of e^(i*k*theta), k < n: (e^(i*n*theta) - 1) / (n*(e^(i*theta) - 1)).

    A full-turn angle (theta = 0 mod 2*pi) makes every term 1, so the
    average is exactly 1; the formula's 0/0 is resolved to that limit.
    Evaluation goes through the half-angle form
    sin(n*theta/2) / (n*sin(theta/2)) * e^(i*(n-1)*theta/2), which keeps the
    O(theta^2) part of e^(i*theta) - 1 from cancelling at tiny angles.
    """
    n = int(n)
    if n < 1:
        raise InvalidInputError(f"average length must be >= 1, got {n}")
    if not math.isfinite(theta):
        raise InvalidInputError(f"angle must be finite, got {theta}")
    if math.remainder(theta, math.tau) == 0.0:
        return complex(1.0, 0.0)
    half = 0.5 * theta
    magnitude = math.sin(n * half) / (n * math.sin(half))
    return magnitude * cmath.exp(1j * (n - 1) * half)
