"""Measurement beams: least-squares sector beams and random steering beams."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .arrays import ArrayConfig, steering_matrix
from .codebook import AngleGrid
from .geometry import AngleIndexRange

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class MeasurementBeams:
    """Probe beams as columns; ``covered_range`` is ``"full"`` for random beams."""

    weights: np.ndarray
    covered_range: Union[AngleIndexRange, str] = "full"

    def __post_init__(self):
        if self.weights.ndim != 2 or self.weights.shape[1] < 1:
            raise ValueError("measurement beams need an N x M weight matrix with M >= 1")

    @property
    def count(self) -> int:
        return self.weights.shape[1]

    @property
    def num_elements(self) -> int:
        return self.weights.shape[0]


def beam_response(w: np.ndarray, grid: AngleGrid, cfg: ArrayConfig) -> np.ndarray:
    """Complex response ``p(angle)^H w`` of a beam on every grid angle."""
    return steering_matrix(grid.angles, cfg).conj().T @ w


def equivalent_indices(indices, grid: AngleGrid, cfg: ArrayConfig, tol: float = 1e-9) -> np.ndarray:
    """All grid indices whose array response coincides with one of ``indices``.

    A ULA only sees sin(angle), so psi and pi - psi (and, at half-wavelength
    spacing, +/- pi/2) are indistinguishable.
    """
    a = steering_matrix(grid.angles, cfg)
    sel = a[:, np.asarray(indices, dtype=int)]
    # max |a_i - a_j| over elements, for every (grid, selected) pair
    diff = np.abs(a[:, :, None] - sel[:, None, :]).max(axis=0)
    return np.flatnonzero((diff < tol).any(axis=1))


def partition_range(rng_: AngleIndexRange, M: int) -> list:
    """Split a range into ``M`` contiguous index blocks whose sizes differ by at most one.

    The remainder goes one index per block starting from the first.
    """
    count = rng_.count
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    if M > count:
        raise ValueError(f"cannot split {count} indices into {M} sub-ranges")
    base, rem = divmod(count, M)
    members = rng_.members()
    out, start = [], 0
    for m in range(M):
        size = base + (1 if m < rem else 0)
        out.append(members[start:start + size])
        start += size
    return out


def design_sector_beam(sub_range: Sequence[int], grid: AngleGrid, cfg: ArrayConfig) -> np.ndarray:
    """Least-squares flat-top beam over ``sub_range``.

    Solves ``min_w sum_u |p(angle_u)^H w - g_u|^2`` over the whole grid with
    ``g_u = 1`` inside the sector (and on its sin-ambiguous mirror images)
    and 0 elsewhere, then rescales to squared norm ``N``.
    """
    sub_range = np.asarray(sub_range, dtype=int)
    if sub_range.size == 0:
        raise ValueError("sub_range must be non-empty")
    a = steering_matrix(grid.angles, cfg)
    target = np.zeros(grid.size)
    target[equivalent_indices(sub_range, grid, cfg)] = 1.0
    w, *_ = np.linalg.lstsq(a.conj().T, target.astype(complex), rcond=None)
    norm = np.linalg.norm(w)
    if norm == 0:
        raise ValueError("degenerate sector design")
    return w * np.sqrt(cfg.num_elements) / norm


def build_sector_beams(rng_: AngleIndexRange, M: int, grid: AngleGrid, cfg: ArrayConfig) -> MeasurementBeams:
    blocks = partition_range(rng_, M)
    w = np.column_stack([design_sector_beam(b, grid, cfg) for b in blocks])
    return MeasurementBeams(weights=w, covered_range=rng_)


def random_measurement_beams(
    M: int,
    cfg: ArrayConfig,
    rng: np.random.Generator,
    *,
    directions: Optional[Sequence[float]] = None,
) -> MeasurementBeams:
    """``M`` steering beams toward i.i.d. uniform directions.

    ``directions`` overrides the draw (used in tests).
    """
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    if directions is None:
        directions = rng.uniform(0.0, TWO_PI, size=M)
    directions = np.asarray(directions, dtype=float)
    if directions.shape != (M,):
        raise ValueError("need exactly M directions")
    return MeasurementBeams(weights=steering_matrix(directions, cfg), covered_range="full")


def beams_for_budget(count: int, indices_per_beam: int, cap: Optional[int] = None) -> int:
    """Beams needed so each sector beam spans about one beamwidth of grid indices."""
    m = int(np.ceil(count / max(1, indices_per_beam)))
    if cap is not None:
        m = min(m, cap)
    return max(1, min(m, count))
