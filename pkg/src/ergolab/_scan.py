"""Exact first-violation scans over point sequences, with rigorous pruning.

Everything in the variation module reduces to one primitive: scanning a
segment of points for the earliest index j such that some earlier index
i >= c (the anchor) has ||a_j - a_i|| >= eps. The scan below is exact; the
pruning never changes the answer, only skips work:

- a running per-real-coordinate bounding box of the candidate prefix gives a
  certified lower bound (a single coordinate gap is realized by an actual
  candidate, and any norm dominates a coordinate gap) and a certified upper
  bound (componentwise box diagonals assembled through the p-sum) on the
  best distance at each j;
- when an exact check at an ambiguous j comes back clean with margin m, the
  triangle inequality lets the scan skip every j' whose cumulative adjacent
  drift from j stays below m.

Indices here are 0-based; the public modules translate to 1-based.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidInputError
from .spaces import batch_norm_p

_CHUNK = 256


class PointsView:
    """Shared precomputation over an (N, u) complex point array."""

    def __init__(self, pts: np.ndarray, p: float):
        pts = np.asarray(pts, dtype=np.complex128)
        if pts.ndim != 2 or pts.shape[0] == 0:
            raise InvalidInputError("points must form a nonempty (N, u) array")
        self.pts = pts
        self.p = float(p)
        self.n = pts.shape[0]
        coords = np.empty((self.n, 2 * pts.shape[1]), dtype=np.float64)
        coords[:, 0::2] = pts.real
        coords[:, 1::2] = pts.imag
        self.coords = coords
        self._cumdrift: np.ndarray | None = None

    def cumdrift(self) -> np.ndarray:
        """cumdrift[t] = sum of adjacent-step distances up to index t."""
        if self._cumdrift is None:
            steps = batch_norm_p(self.pts[1:] - self.pts[:-1], self.p)
            out = np.zeros(self.n, dtype=np.float64)
            np.cumsum(steps, out=out[1:])
            self._cumdrift = out
        return self._cumdrift

    def distances_to(self, j: int, lo: int, hi: int) -> np.ndarray:
        """||a_i - a_j|| for i in [lo, hi)."""
        return batch_norm_p(self.pts[lo:hi] - self.pts[j], self.p)


def _pair_moduli(d_coords: np.ndarray, p: float) -> np.ndarray:
    """Norm assembled from per-coordinate gaps: rows of (.., 2u) -> (..,)."""
    comp = np.sqrt(d_coords[..., 0::2] ** 2 + d_coords[..., 1::2] ** 2)
    if p == 1.0:
        return comp.sum(axis=-1)
    if p == 2.0:
        return np.sqrt((comp**2).sum(axis=-1))
    return (comp**p).sum(axis=-1) ** (1.0 / p)


def first_violation(
    view: PointsView, eps: float, anchor: int, hi: int
) -> tuple[int, int, int] | None:
    """Earliest j in (anchor, hi] with some i in [anchor, j) at distance >= eps.

    Returns (i_first, i_last, j): the smallest and largest admissible i for
    that j. Returns None when the whole segment [anchor, hi] is eps-tight.
    """
    if eps <= 0.0:
        raise InvalidInputError(f"separation threshold must be > 0, got {eps}")
    if not 0 <= anchor <= hi < view.n:
        raise InvalidInputError(f"segment [{anchor}, {hi}] outside [0, {view.n - 1}]")
    coords, p = view.coords, view.p

    cmin = coords[anchor].copy()
    cmax = coords[anchor].copy()
    j = anchor + 1
    while j <= hi:
        stop = min(hi + 1, j + _CHUNK)
        block = coords[j:stop]
        # Exclusive prefix boxes: candidate set for row t is [anchor, j+t-1].
        pmin = np.minimum(np.minimum.accumulate(block, axis=0), cmin)
        pmax = np.maximum(np.maximum.accumulate(block, axis=0), cmax)
        bmin = np.empty_like(pmin)
        bmax = np.empty_like(pmax)
        bmin[0], bmax[0] = cmin, cmax
        bmin[1:], bmax[1:] = pmin[:-1], pmax[:-1]

        gap = np.maximum(block - bmin, bmax - block)
        lb = gap.max(axis=1)
        ub = _pair_moduli(gap, p)
        alive = ub >= eps
        if not alive.any():
            cmin, cmax = pmin[-1], pmax[-1]
            j = stop
            continue
        t = int(np.argmax(alive))
        jj = j + t
        dist = view.distances_to(jj, anchor, jj)
        valid = dist >= eps
        if lb[t] >= eps or valid.any():
            where = np.flatnonzero(valid)
            # lb >= eps certifies a witness exists, so `where` is nonempty.
            return anchor + int(where[0]), anchor + int(where[-1]), jj
        # Clean with margin: skip every j' whose drift from jj stays inside it.
        margin = eps - float(dist.max(initial=0.0))
        cd = view.cumdrift()
        skip_to = int(np.searchsorted(cd, cd[jj] + margin, side="left")) - 1
        skip_to = max(skip_to, jj)
        upto = min(skip_to, hi)
        cmin = np.minimum(cmin, coords[j : upto + 1].min(axis=0))
        cmax = np.maximum(cmax, coords[j : upto + 1].max(axis=0))
        j = upto + 1
    return None


def has_separated_pair(view: PointsView, eps: float, lo: int, hi: int) -> bool:
    """True when some pair inside [lo, hi] is at distance >= eps."""
    if lo >= hi:
        return False
    return first_violation(view, eps, lo, hi) is not None
