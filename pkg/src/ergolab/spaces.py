"""Finite-dimensional complex sequence spaces with a power-type convexity modulus.

The ambient space everywhere in this package is l^p_u(C) viewed as a real
Banach space: u complex slots, norm (sum |z_i|^p)^(1/p). A SpaceDescriptor
pairs the exponent p with a coefficient K such that eta(eps) = K * eps^p is a
claimed modulus of uniform convexity; `check_uniform_convexity` audits such a
claim by sampling, and `clarkson_modulus` supplies the classical valid choice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, InvalidInputError

__all__ = [
    "Vector",
    "SpaceDescriptor",
    "vector",
    "norm_p",
    "clarkson_modulus",
    "clarkson_lower_bound",
    "check_uniform_convexity",
    "descriptor_preset",
    "PRESETS",
]


def _validated_components(components) -> np.ndarray:
    arr = np.asarray(components, dtype=np.complex128)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidInputError("components must be a nonempty 1-D array")
    if not np.all(np.isfinite(arr.view(np.float64))):
        raise InvalidInputError("components must be finite")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Vector:
    """A point of l^p_u(C). Immutable; arithmetic returns new vectors."""

    components: np.ndarray
    p: float

    def __post_init__(self):
        object.__setattr__(self, "components", _validated_components(self.components))
        p = float(self.p)
        if not (math.isfinite(p) and p >= 1.0):
            raise InvalidInputError(f"norm exponent must satisfy p >= 1, got {self.p}")
        object.__setattr__(self, "p", p)

    @property
    def dim(self) -> int:
        return self.components.shape[0]

    def norm(self) -> float:
        return norm_p(self)

    def _coerce(self, other: "Vector") -> None:
        if not isinstance(other, Vector):
            raise InvalidInputError("expected a Vector")
        if other.dim != self.dim:
            raise DimensionMismatchError(f"dimension {other.dim} != {self.dim}")
        if other.p != self.p:
            raise InvalidInputError(f"norm exponent {other.p} != {self.p}")

    def __add__(self, other: "Vector") -> "Vector":
        self._coerce(other)
        return Vector(self.components + other.components, self.p)

    def __sub__(self, other: "Vector") -> "Vector":
        self._coerce(other)
        return Vector(self.components - other.components, self.p)

    def __mul__(self, scalar) -> "Vector":
        return Vector(self.components * complex(scalar), self.p)

    __rmul__ = __mul__

    def __neg__(self) -> "Vector":
        return Vector(-self.components, self.p)


def vector(components, p: float) -> Vector:
    """Convenience constructor accepting any array-like of numbers."""
    return Vector(np.asarray(components, dtype=np.complex128), p)


def norm_p(v: Vector) -> float:
    """(sum_i |z_i|^p)^(1/p) over the complex slots of v."""
    moduli = np.abs(v.components)
    # Scale by the largest modulus so large p cannot overflow.
    peak = float(moduli.max())
    if peak == 0.0:
        return 0.0
    return peak * float(np.sum((moduli / peak) ** v.p)) ** (1.0 / v.p)


def batch_norm_p(points: np.ndarray, p: float) -> np.ndarray:
    """Row-wise norm of an (n, u) complex array. Internal fast path."""
    moduli = np.abs(points)
    if p == 1.0:
        return moduli.sum(axis=1)
    if p == 2.0:
        return np.sqrt((moduli**2).sum(axis=1))
    peak = moduli.max(axis=1)
    safe = np.where(peak == 0.0, 1.0, peak)
    out = safe * np.sum((moduli / safe[:, None]) ** p, axis=1) ** (1.0 / p)
    return np.where(peak == 0.0, 0.0, out)


@dataclass(frozen=True)
class SpaceDescriptor:
    """Exponent p >= 2 plus a claimed modulus coefficient K.

    The claim eta(eps) = K*eps^p is only consistent with a unit-ball geometry
    when K*eps^p <= 1 on (0, 2]; `admissible` reports that. An inadmissible
    descriptor is still constructible so the sampling audit can demonstrate
    its failure.
    """

    p: float
    K: float

    def __post_init__(self):
        p, K = float(self.p), float(self.K)
        if not (math.isfinite(p) and p >= 2.0):
            raise InvalidInputError(f"descriptor exponent must satisfy p >= 2, got {self.p}")
        if not (math.isfinite(K) and K > 0.0):
            raise InvalidInputError(f"modulus coefficient must be positive, got {self.K}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "K", K)

    def eta(self, eps: float) -> float:
        """Claimed modulus eta(eps) = K * eps^p, for eps in (0, 2]."""
        if not 0.0 < eps <= 2.0:
            raise InvalidInputError(f"modulus argument must lie in (0, 2], got {eps}")
        return self.K * eps**self.p

    @property
    def admissible(self) -> bool:
        """True when K*eps^p <= 1 holds across (0, 2], i.e. K <= 2^-p."""
        return self.K * 2.0**self.p <= 1.0


def clarkson_modulus(p: float, eps: float) -> float:
    """The classical modulus 1 - (1 - (eps/2)^p)^(1/p) of l^p, p >= 2."""
    if p < 2.0 or not math.isfinite(p):
        raise InvalidInputError(f"need p >= 2, got {p}")
    if not 0.0 < eps <= 2.0:
        raise InvalidInputError(f"need eps in (0, 2], got {eps}")
    return 1.0 - (1.0 - (eps / 2.0) ** p) ** (1.0 / p)


def clarkson_lower_bound(p: float, eps: float) -> float:
    """Power-type lower bound (1/p) * (eps/2)^p for the Clarkson modulus."""
    if p < 2.0 or not math.isfinite(p):
        raise InvalidInputError(f"need p >= 2, got {p}")
    if not 0.0 < eps <= 2.0:
        raise InvalidInputError(f"need eps in (0, 2], got {eps}")
    return (eps / 2.0) ** p / p


PRESETS: dict[str, str] = {
    "hilbert": "p=2, K=1/8 (valid Hilbert-space modulus: 1-sqrt(1-t) >= t/2)",
    "clarkson": "given p>=2, K=1/(p*2^p) (Clarkson modulus lower bound for l^p)",
}


def descriptor_preset(name: str, p: float | None = None) -> SpaceDescriptor:
    """Build one of the shipped descriptors by name.

    "hilbert" ignores p and returns (2, 1/8); "clarkson" requires p >= 2 and
    returns (p, 1/(p*2^p)).
    """
    if name == "hilbert":
        return SpaceDescriptor(2.0, 0.125)
    if name == "clarkson":
        if p is None:
            raise InvalidInputError("preset 'clarkson' needs an exponent p")
        p = float(p)
        return SpaceDescriptor(p, 1.0 / (p * 2.0**p))
    raise InvalidInputError(f"unknown preset {name!r}; known: {sorted(PRESETS)}")


def _unit_sphere_sample(rng: np.random.Generator, n: int, dim: int, p: float) -> np.ndarray:
    z = rng.standard_normal((n, dim)) + 1j * rng.standard_normal((n, dim))
    norms = batch_norm_p(z, p)
    norms[norms == 0.0] = 1.0
    return z / norms[:, None]


def check_uniform_convexity(
    desc: SpaceDescriptor,
    dim: int,
    trials: int = 10_000,
    seed: int = 0,
    tol: float = 1e-9,
) -> int:
    """Sample unit-ball pairs and count violations of the claimed modulus.

    Each trial draws x, y in the unit ball of l^p_dim(C) (two thirds of the
    trials pin both to the unit sphere, where the midpoint-shrinkage claim is
    tightest) and tests, at the realized separation eps = ||x - y||,

        ||(x + y) / 2|| <= 1 - K * eps^p + tol.

    Returns the number of violating pairs: 0 is expected whenever (p, K) is a
    valid modulus for the space, and positive counts expose an inflated K.
    Pairs with eps = 0 or eps > 2 (impossible in the ball, barring rounding)
    are skipped as vacuous.
    """
    if dim < 1:
        raise InvalidInputError(f"dimension must be >= 1, got {dim}")
    if trials < 1:
        raise InvalidInputError(f"trials must be >= 1, got {trials}")
    rng = np.random.default_rng(seed)
    p = desc.p

    x = _unit_sphere_sample(rng, trials, dim, p)
    y = _unit_sphere_sample(rng, trials, dim, p)
    # Pull one third of the pairs into the interior with independent radii.
    interior = rng.random(trials) < (1.0 / 3.0)
    radii_x = np.where(interior, rng.random(trials), 1.0)
    radii_y = np.where(interior, rng.random(trials), 1.0)
    x = x * radii_x[:, None]
    y = y * radii_y[:, None]

    eps = batch_norm_p(x - y, p)
    mid = batch_norm_p((x + y) / 2.0, p)
    live = (eps > 0.0) & (eps <= 2.0)
    bound = 1.0 - desc.K * eps[live] ** p + tol
    return int(np.count_nonzero(mid[live] > bound))
