"""Linear operators on l^p_u(C) with power-bound certificates.

Four kinds are provided. Three are isometries by construction and carry the
exact certificate (B1, B2, n_max) = (1, 1, inf):

- RotationProduct(angles): componentwise scalar rotation z_j -> e^(i*theta_j) z_j;
  the n-th power multiplies by e^(i*n*theta_j) in closed form.
- CyclicShift(dim): wrap-around right shift (z_1, ..., z_u) -> (z_u, z_1, ..., z_(u-1)).
- ZShift(): the step-one shift on integer-indexed functions; it has no action
  on finite vectors (the dyadic module consumes it).

DenseMatrix wraps an arbitrary real matrix over the 2u real coordinates
(interleaved Re/Im), powered by iterated multiplication. Its power bounds are
not known a priori; `estimate_power_bounds` samples them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import DimensionMismatchError, InvalidInputError
from .spaces import Vector, batch_norm_p

__all__ = [
    "PowerBoundCertificate",
    "RotationProduct",
    "CyclicShift",
    "DenseMatrix",
    "ZShift",
    "Operator",
    "apply",
    "apply_power",
    "estimate_power_bounds",
]


@dataclass(frozen=True)
class PowerBoundCertificate:
    """Claim that B1*||y|| <= ||T^n y|| <= B2*||y|| for 1 <= n <= n_max."""

    B1: float
    B2: float
    n_max: float  # math.inf for "all powers"

    def __post_init__(self):
        if not (0.0 < self.B1 <= self.B2) or not math.isfinite(self.B2):
            raise InvalidInputError(f"need 0 < B1 <= B2 < inf, got ({self.B1}, {self.B2})")
        if not (self.n_max >= 1):
            raise InvalidInputError(f"need n_max >= 1, got {self.n_max}")


_ISOMETRY_CERT = PowerBoundCertificate(1.0, 1.0, math.inf)


@dataclass(frozen=True)
class RotationProduct:
    """Product of scalar rotations, one angle per complex slot."""

    angles: np.ndarray
    certificate: PowerBoundCertificate = _ISOMETRY_CERT

    def __post_init__(self):
        arr = np.asarray(self.angles, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0 or not np.all(np.isfinite(arr)):
            raise InvalidInputError("angles must be a nonempty finite 1-D array")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "angles", arr)

    @property
    def dim(self) -> int:
        return self.angles.shape[0]


@dataclass(frozen=True)
class CyclicShift:
    """Coordinate permutation shifting every slot one place right, wrapping."""

    dim: int
    certificate: PowerBoundCertificate = _ISOMETRY_CERT

    def __post_init__(self):
        if int(self.dim) < 1:
            raise InvalidInputError(f"dimension must be >= 1, got {self.dim}")
        object.__setattr__(self, "dim", int(self.dim))


@dataclass(frozen=True)
class DenseMatrix:
    """Arbitrary real-linear map given over the 2u interleaved real coordinates."""

    matrix: np.ndarray
    certificate: PowerBoundCertificate | None = None

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0 or m.shape[0] % 2:
            raise InvalidInputError("matrix must be square with even size 2u")
        if not np.all(np.isfinite(m)):
            raise InvalidInputError("matrix entries must be finite")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0] // 2


@dataclass(frozen=True)
class ZShift:
    """Step-one shift on integer-indexed functions: (Tf)(x) = f(x + 1)."""

    certificate: PowerBoundCertificate = _ISOMETRY_CERT


Operator = Union[RotationProduct, CyclicShift, DenseMatrix, ZShift]


def _check_dim(op, v: Vector) -> None:
    if v.dim != op.dim:
        raise DimensionMismatchError(f"operator dimension {op.dim} != vector dimension {v.dim}")


def interleave_real(components: np.ndarray) -> np.ndarray:
    """(z_1, ..., z_u) -> (Re z_1, Im z_1, ..., Re z_u, Im z_u)."""
    out = np.empty(2 * components.shape[0], dtype=np.float64)
    out[0::2] = components.real
    out[1::2] = components.imag
    return out


def deinterleave_real(coords: np.ndarray) -> np.ndarray:
    return coords[0::2] + 1j * coords[1::2]


def apply(op: Operator, v: Vector) -> Vector:
    """One application of the operator. ZShift has no finite-vector action."""
    if isinstance(op, RotationProduct):
        _check_dim(op, v)
        return Vector(v.components * np.exp(1j * op.angles), v.p)
    if isinstance(op, CyclicShift):
        _check_dim(op, v)
        return Vector(np.roll(v.components, 1), v.p)
    if isinstance(op, DenseMatrix):
        _check_dim(op, v)
        return Vector(deinterleave_real(op.matrix @ interleave_real(v.components)), v.p)
    if isinstance(op, ZShift):
        raise InvalidInputError("ZShift acts on integer-indexed functions; use the dyadic module")
    raise InvalidInputError(f"unknown operator kind {type(op).__name__}")


def apply_power(op: Operator, n: int, v: Vector) -> Vector:
    """T^n applied to v; closed form where the kind admits one.

    DenseMatrix powers are iterated multiplications, so cost grows linearly
    with n by design (no eigendecomposition shortcuts).
    """
    n = int(n)
    if n < 0:
        raise InvalidInputError(f"power must be >= 0, got {n}")
    if isinstance(op, RotationProduct):
        _check_dim(op, v)
        return Vector(v.components * np.exp(1j * (n * op.angles)), v.p)
    if isinstance(op, CyclicShift):
        _check_dim(op, v)
        return Vector(np.roll(v.components, n % op.dim), v.p)
    if isinstance(op, DenseMatrix):
        _check_dim(op, v)
        coords = interleave_real(v.components)
        for _ in range(n):
            coords = op.matrix @ coords
        return Vector(deinterleave_real(coords), v.p)
    if isinstance(op, ZShift):
        raise InvalidInputError("ZShift acts on integer-indexed functions; use the dyadic module")
    raise InvalidInputError(f"unknown operator kind {type(op).__name__}")


def estimate_power_bounds(
    op: Operator,
    n_max: int = 64,
    trials: int = 32,
    seed: int = 0,
    p: float = 2.0,
) -> PowerBoundCertificate:
    """Measure (B1, B2) as min/max of ||T^n y|| over sampled unit vectors.

    Powers range over 1 <= n <= n_max. Isometry kinds return their exact
    certificate without sampling. The result is a measurement, not a proof:
    it is never attached to the operator automatically.
    """
    if isinstance(op, (RotationProduct, CyclicShift, ZShift)):
        return op.certificate
    if not isinstance(op, DenseMatrix):
        raise InvalidInputError(f"unknown operator kind {type(op).__name__}")
    n_max = int(n_max)
    if n_max < 1:
        raise InvalidInputError(f"need n_max >= 1, got {n_max}")
    if trials < 1:
        raise InvalidInputError(f"need trials >= 1, got {trials}")

    rng = np.random.default_rng(seed)
    u = op.dim
    z = rng.standard_normal((trials, u)) + 1j * rng.standard_normal((trials, u))
    norms = batch_norm_p(z, p)
    norms[norms == 0.0] = 1.0
    z = z / norms[:, None]

    lo, hi = math.inf, 0.0
    coords = np.empty((trials, 2 * u), dtype=np.float64)
    coords[:, 0::2] = z.real
    coords[:, 1::2] = z.imag
    for _ in range(n_max):
        coords = coords @ op.matrix.T
        powered = coords[:, 0::2] + 1j * coords[:, 1::2]
        norms = batch_norm_p(powered, p)
        lo = min(lo, float(norms.min()))
        hi = max(hi, float(norms.max()))
    if lo <= 0.0:
        raise InvalidInputError("sampled a vector annihilated by the matrix; bounds are degenerate")
    return PowerBoundCertificate(lo, hi, float(n_max))
