"""Vectorized beam measurements, sensing matrix and OMP recovery."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .beams import MeasurementBeams
from .codebook import AngleGrid, Dictionary, vec


@dataclass(frozen=True)
class SensingProblem:
    phi: np.ndarray
    y: np.ndarray
    tx_power: float = 1.0
    noise_sigma: float = 0.0


@dataclass(frozen=True)
class SparseEstimate:
    support: list
    gains: np.ndarray
    residual_norm: float
    residual_history: list = field(default_factory=list)

    @property
    def is_empty(self) -> bool:
        return len(self.support) == 0


def _weights(beams):
    return beams.weights if isinstance(beams, MeasurementBeams) else np.asarray(beams)


def simulate_measurements(
    H: np.ndarray,
    W_tx,
    W_rx,
    P: float,
    noise_sigma: float,
    rng: Optional[np.random.Generator] = None,
) -> np.ndarray:
    """Stacked probe outputs ``vec(sqrt(P) W_rx^H H W_tx) + vec(W_rx^H N)``.

    ``N`` holds one independent circular Gaussian noise vector per TX beam.
    The result has length ``M_tx * M_rx`` with the RX index running fastest.
    """
    wt, wr = _weights(W_tx), _weights(W_rx)
    if H.shape != (wr.shape[0], wt.shape[0]):
        raise ValueError(
            f"channel {H.shape} incompatible with RX beams {wr.shape} / TX beams {wt.shape}"
        )
    if P < 0 or noise_sigma < 0:
        raise ValueError("P and noise_sigma must be >= 0")
    Y = np.sqrt(P) * (wr.conj().T @ H @ wt)
    if noise_sigma > 0:
        if rng is None:
            raise ValueError("a random generator is required when noise_sigma > 0")
        shape = (H.shape[0], wt.shape[1])
        N = noise_sigma * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
        Y = Y + wr.conj().T @ N
    return vec(Y)


def build_sensing_matrix(W_tx, W_rx, T_D, P: float) -> np.ndarray:
    """``sqrt(P) (W_tx^T kron W_rx^H) T_D``, rows ordered like :func:`simulate_measurements`."""
    wt, wr = _weights(W_tx), _weights(W_rx)
    td = T_D.matrix if isinstance(T_D, Dictionary) else np.asarray(T_D)
    if wt.shape[0] * wr.shape[0] != td.shape[0]:
        raise ValueError(
            f"dictionary has {td.shape[0]} rows, beams need {wt.shape[0]} * {wr.shape[0]}"
        )
    if P < 0:
        raise ValueError("P must be >= 0")
    return np.sqrt(P) * (np.kron(wt.T, wr.conj().T) @ td)


def omp(
    phi: np.ndarray,
    y: np.ndarray,
    max_sparsity: int,
    residual_tol: float = 1e-3,
    candidates: Optional[np.ndarray] = None,
) -> SparseEstimate:
    """Orthogonal matching pursuit with column-normalized correlation.

    Stops after ``max_sparsity`` atoms or once ``||r|| <= residual_tol * ||y||``.
    ``candidates`` restricts the atoms that may be selected.
    """
    phi = np.asarray(phi)
    y = np.asarray(y).ravel()
    if phi.size == 0:
        raise ValueError("phi must be non-empty")
    if residual_tol < 0:
        raise ValueError("residual_tol must be >= 0")
    if phi.shape[0] != y.size:
        raise ValueError(f"phi has {phi.shape[0]} rows but y has {y.size} entries")

    y_norm = np.linalg.norm(y)
    if y_norm == 0:
        return SparseEstimate(support=[], gains=np.zeros(0, complex), residual_norm=0.0)

    col_norms = np.linalg.norm(phi, axis=0)
    allowed = col_norms > 1e-12 * max(col_norms.max(), 1e-300)
    if candidates is not None:
        mask = np.zeros(phi.shape[1], bool)
        mask[np.asarray(candidates, dtype=int)] = True
        allowed &= mask
    inv_norms = np.where(allowed, 1.0 / np.where(allowed, col_norms, 1.0), 0.0)

    support: list = []
    gains = np.zeros(0, complex)
    residual = y.copy()
    history = [float(y_norm)]
    for _ in range(int(max_sparsity)):
        if history[-1] <= residual_tol * y_norm:
            break
        corr = np.abs(phi.conj().T @ residual) * inv_norms
        corr[support] = 0.0
        k = int(np.argmax(corr))
        if corr[k] <= 0.0:
            break
        support.append(k)
        gains, *_ = np.linalg.lstsq(phi[:, support], y, rcond=None)
        residual = y - phi[:, support] @ gains
        history.append(float(np.linalg.norm(residual)))
    return SparseEstimate(
        support=support, gains=gains, residual_norm=history[-1], residual_history=history
    )


def support_to_angles(index: int, grid: AngleGrid) -> tuple:
    """Map a dictionary column back to its (AoD, AoA) grid angles."""
    n = grid.size
    if not 0 <= index < n * n:
        raise ValueError(f"column {index} out of range for N_grid={n}")
    u, v = divmod(int(index), n)
    return float(grid.angles[u]), float(grid.angles[v])


def sensing_problem(H, W_tx, W_rx, T_D, P, noise_sigma, rng=None) -> SensingProblem:
    """Bundle a simulated measurement with its sensing matrix."""
    y = simulate_measurements(H, W_tx, W_rx, P, noise_sigma, rng)
    return SensingProblem(
        phi=build_sensing_matrix(W_tx, W_rx, T_D, P), y=y, tx_power=P, noise_sigma=noise_sigma
    )
