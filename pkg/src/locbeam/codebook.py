"""Phase-quantized steering codebook, angle grid and Kronecker dictionary."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arrays import ArrayConfig, steering_matrix

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class Codebook:
    weights: np.ndarray  # N x B

    @property
    def beam_count(self) -> int:
        return self.weights.shape[1]

    @property
    def num_elements(self) -> int:
        return self.weights.shape[0]

    def __getitem__(self, b):
        return self.weights[:, b]


@dataclass(frozen=True)
class AngleGrid:
    size: int
    angles: np.ndarray

    @property
    def spacing(self) -> float:
        return TWO_PI / self.size

    def nearest_index(self, angle: float) -> int:
        return int(np.round(np.mod(angle, TWO_PI) / self.spacing)) % self.size


@dataclass(frozen=True)
class Dictionary:
    """Columns ``kron(conj(p_BS(psi_u)), p_MS(phi_v))`` at index ``u * N_grid + v``."""

    matrix: np.ndarray
    grid: AngleGrid
    bs: ArrayConfig
    ms: ArrayConfig

    @property
    def grid_size(self) -> int:
        return self.grid.size

    def column_index(self, u: int, v: int) -> int:
        n = self.grid.size
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"grid indices ({u}, {v}) out of range for N_grid={n}")
        return u * n + v


def _exponent(n, b, N, B):
    # integer form of floor(n * mod(b + B/2, B) / (N/4)); B/2 taken as B // 2
    return (4 * n * np.mod(b + B // 2, B)) // N


def codebook_weight(n: int, b: int, N: int, B: int) -> complex:
    """Single entry ``j ** floor(n * mod(b + B/2, B) / (N/4))`` of the codebook."""
    if N < 4 or N % 4:
        raise ValueError(f"N must be a positive multiple of 4, got {N}")
    if B < 1:
        raise ValueError(f"B must be >= 1, got {B}")
    if not (0 <= n < N and 0 <= b < B):
        raise ValueError(f"index (n={n}, b={b}) out of range for N={N}, B={B}")
    return complex(1j ** (int(_exponent(n, b, N, B)) % 4))


_POWERS_OF_J = np.array([1, 1j, -1, -1j])


def build_codebook(N: int, B: int) -> Codebook:
    """Full ``N x B`` codebook; all entries are powers of j."""
    if N < 4 or N % 4:
        raise ValueError(f"N must be a positive multiple of 4, got {N}")
    if B < 1:
        raise ValueError(f"B must be >= 1, got {B}")
    n = np.arange(N)[:, None]
    b = np.arange(B)[None, :]
    return Codebook(weights=_POWERS_OF_J[_exponent(n, b, N, B) % 4])


def quantized_grid(N_grid: int) -> AngleGrid:
    if int(N_grid) != N_grid or N_grid < 1:
        raise ValueError(f"N_grid must be a positive integer, got {N_grid}")
    N_grid = int(N_grid)
    return AngleGrid(size=N_grid, angles=TWO_PI * np.arange(N_grid) / N_grid)


def build_dictionary(grid: AngleGrid, bs: ArrayConfig, ms: ArrayConfig) -> Dictionary:
    """Sparse basis for vec(H) over all (AoD, AoA) grid pairs.

    Shape is ``N_BS*N_MS x N_grid**2``; AoD index is the slow (major) one.
    """
    a_bs = steering_matrix(grid.angles, bs)
    a_ms = steering_matrix(grid.angles, ms)
    # kron of matrices keeps column order u * N_grid + v
    return Dictionary(matrix=np.kron(a_bs.conj(), a_ms), grid=grid, bs=bs, ms=ms)


def vec(m: np.ndarray) -> np.ndarray:
    """Column-major vectorization."""
    return np.asarray(m).reshape(-1, order="F")
