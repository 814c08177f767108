"""Node placement, localization error injection and localized angle ranges."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .codebook import AngleGrid

TWO_PI = 2.0 * np.pi
# index-space slack so that grid points sitting exactly on a sector edge are kept
_EDGE_EPS = 1e-9


@dataclass(frozen=True)
class Location:
    x: float
    y: float

    def __post_init__(self):
        if not (np.isfinite(self.x) and np.isfinite(self.y)):
            raise ValueError("location coordinates must be finite")

    def distance_to(self, other: "Location") -> float:
        return float(np.hypot(other.x - self.x, other.y - self.y))

    def bearing_to(self, other: "Location") -> float:
        """Azimuth of ``other`` seen from here, in [0, 2pi)."""
        theta = np.arctan2(other.y - self.y, other.x - self.x) % TWO_PI
        return 0.0 if theta >= TWO_PI else float(theta)


@dataclass(frozen=True)
class LocalizationError:
    """Per-axis localization error bound.

    ``one_sided=True`` draws offsets from [0, max_error]; otherwise the
    offsets are zero-mean on [-max_error, max_error].
    """

    max_error: float
    one_sided: bool = True

    def __post_init__(self):
        if not self.max_error >= 0:
            raise ValueError("max_error must be >= 0")


@dataclass(frozen=True)
class AngleIndexRange:
    """Contiguous (possibly wrapping) run of grid indices ``lo .. hi`` mod N."""

    lo: int
    hi: int
    grid_size: int

    def __post_init__(self):
        n = self.grid_size
        if n < 1 or not (0 <= self.lo < n and 0 <= self.hi < n):
            raise ValueError(f"range ({self.lo}, {self.hi}) invalid for grid of {n}")

    @classmethod
    def full(cls, grid_size: int) -> "AngleIndexRange":
        return cls(0, grid_size - 1, grid_size)

    @property
    def wraps(self) -> bool:
        return self.hi < self.lo

    @property
    def count(self) -> int:
        return (self.hi - self.lo) % self.grid_size + 1

    @property
    def is_full(self) -> bool:
        return self.count == self.grid_size

    def members(self) -> np.ndarray:
        return (self.lo + np.arange(self.count)) % self.grid_size

    def __contains__(self, index) -> bool:
        return (int(index) - self.lo) % self.grid_size < self.count

    def widened(self, min_count: int) -> "AngleIndexRange":
        """Grow symmetrically (extra index on the high side) to ``min_count`` members."""
        n = self.grid_size
        if min_count >= n:
            return self.full(n)
        extra = max(0, min_count - self.count)
        lo = (self.lo - extra // 2) % n
        hi = (self.hi + extra - extra // 2) % n
        return AngleIndexRange(lo, hi, n)


def perturb_location(
    true_loc: Location, err: LocalizationError, rng: np.random.Generator
) -> Location:
    """Add a per-axis uniform localization offset to ``true_loc``."""
    low = 0.0 if err.one_sided else -err.max_error
    dx, dy = rng.uniform(low, err.max_error, size=2)
    return Location(true_loc.x + dx, true_loc.y + dy)


def _bound(e: Union[LocalizationError, float]) -> float:
    return e.max_error if isinstance(e, LocalizationError) else float(e)


def combined_error(bs_err, ms_err, *, one_sided: bool = False) -> float:
    """Worst-case planar displacement of the BS-MS relative position.

    With zero-mean offsets each axis of the relative error is bounded by
    ``bs + ms``, giving ``sqrt(2) * (bs + ms)``. With one-sided offsets
    on [0, e] the relative error per axis lies in ``[-e_bs, e_ms]``, so the
    tighter bound ``sqrt(2) * max(bs, ms)`` holds.
    """
    a, b = _bound(bs_err), _bound(ms_err)
    if a < 0 or b < 0:
        raise ValueError("error bounds must be >= 0")
    return float(np.sqrt(2.0) * (max(a, b) if one_sided else a + b))


def angular_range(
    observer_est: Location, target_est: Location, combined_err: float, grid: AngleGrid
) -> AngleIndexRange:
    """Grid indices that may contain the bearing from observer to target.

    The target is assumed to lie in a disk of radius ``combined_err`` around
    its estimate, which bounds the bearing to ``theta +/- arcsin(r / D)``.
    When the disk swallows the observer the full grid is returned.
    """
    if combined_err < 0:
        raise ValueError("combined_err must be >= 0")
    dist = observer_est.distance_to(target_est)
    n = grid.size
    if dist == 0.0:
        if combined_err == 0.0:
            raise ValueError("bearing undefined: coincident locations with zero error")
        return AngleIndexRange.full(n)
    if combined_err >= dist:
        return AngleIndexRange.full(n)

    theta = observer_est.bearing_to(target_est)
    beta = float(np.arcsin(combined_err / dist))
    step = grid.spacing
    lo = int(np.ceil((theta - beta) / step - _EDGE_EPS))
    hi = int(np.floor((theta + beta) / step + _EDGE_EPS))
    if hi < lo:
        k = grid.nearest_index(theta)
        return AngleIndexRange(k, k, n)
    if hi - lo + 1 >= n:
        return AngleIndexRange.full(n)
    return AngleIndexRange(lo % n, hi % n, n)
