"""Uniform linear array responses and sparse geometric channel draws."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class ArrayConfig:
    """ULA size and element spacing (in wavelengths)."""

    num_elements: int
    element_spacing_over_wavelength: float = 0.5

    def __post_init__(self):
        if int(self.num_elements) != self.num_elements or self.num_elements < 1:
            raise ValueError(f"num_elements must be a positive integer, got {self.num_elements}")
        if not np.isfinite(self.element_spacing_over_wavelength) or self.element_spacing_over_wavelength <= 0:
            raise ValueError("element_spacing_over_wavelength must be > 0")


@dataclass(frozen=True)
class Path:
    gain: complex
    aod: float
    aoa: float
    is_los: bool = False


@dataclass(frozen=True)
class PathSet:
    """Ordered propagation paths (LOS first) plus the average path loss."""

    paths: tuple
    path_loss: float = 1.0

    def __post_init__(self):
        if len(self.paths) < 1:
            raise ValueError("a PathSet needs at least one path")
        if not self.paths[0].is_los or sum(p.is_los for p in self.paths) != 1:
            raise ValueError("exactly one LOS path is required and it must come first")
        if not self.path_loss > 0:
            raise ValueError("path_loss must be positive")

    def __len__(self):
        return len(self.paths)

    @property
    def gains(self) -> np.ndarray:
        return np.array([p.gain for p in self.paths], dtype=complex)

    @property
    def aods(self) -> np.ndarray:
        return np.array([p.aod for p in self.paths])

    @property
    def aoas(self) -> np.ndarray:
        return np.array([p.aoa for p in self.paths])

    @property
    def rician_ratio(self) -> float:
        """LOS power over total NLOS power (inf for a single path)."""
        power = np.abs(self.gains) ** 2
        nlos = power[1:].sum()
        return np.inf if nlos == 0 else float(power[0] / nlos)


def wrap_angle(angle):
    """Wrap radians into [0, 2pi)."""
    out = np.mod(angle, TWO_PI)
    # np.mod can return exactly 2pi for tiny negative inputs
    out = np.where(out >= TWO_PI, 0.0, out)
    return float(out) if out.ndim == 0 else out


def array_response(angle: float, cfg: ArrayConfig) -> np.ndarray:
    """Response of a ULA toward azimuth ``angle``.

    Element ``n`` equals ``exp(j * 2pi * n * (d/lambda) * sin(angle))``.
    """
    if not np.isfinite(angle):
        raise ValueError(f"angle must be finite, got {angle}")
    n = np.arange(cfg.num_elements)
    return np.exp(1j * TWO_PI * cfg.element_spacing_over_wavelength * n * np.sin(angle))


def steering_matrix(angles, cfg: ArrayConfig) -> np.ndarray:
    """Stack of array responses, one column per angle (N x len(angles))."""
    angles = np.atleast_1d(np.asarray(angles, dtype=float))
    if not np.all(np.isfinite(angles)):
        raise ValueError("angles must be finite")
    n = np.arange(cfg.num_elements)[:, None]
    return np.exp(1j * TWO_PI * cfg.element_spacing_over_wavelength * n * np.sin(angles)[None, :])


def free_space_path_loss(distance: float, exponent: float = 2.0) -> float:
    """Amplitude path-loss factor ``distance ** exponent`` used as gamma."""
    if distance <= 0:
        raise ValueError("distance must be positive")
    return float(distance) ** exponent


def sample_paths(
    rng: np.random.Generator,
    L: int,
    rician_k: float,
    *,
    los_angles: Optional[Sequence[float]] = None,
    random_k: bool = False,
    nlos_profile: str = "equal",
    decay: float = 0.5,
    path_loss: float = 1.0,
) -> PathSet:
    """Draw an L-path Rician channel with unit total power.

    The LOS path is placed first. NLOS gains are circular complex Gaussian
    and are jointly rescaled so that LOS power / total NLOS power equals
    ``rician_k`` exactly (or a value drawn from Uniform(0, k] when
    ``random_k`` is set). Angles are continuous and uniform on [0, 2pi)
    unless ``los_angles=(aod, aoa)`` pins the LOS path to a known geometry.

    ``nlos_profile`` is ``"equal"`` (i.i.d. NLOS gains) or ``"exponential"``
    (expected power of the i-th NLOS path scaled by ``decay**i``).
    """
    if int(L) != L or L < 1:
        raise ValueError(f"L must be a positive integer, got {L}")
    if not rician_k > 0:
        raise ValueError(f"rician_k must be > 0, got {rician_k}")
    if nlos_profile not in ("equal", "exponential"):
        raise ValueError(f"unknown nlos_profile {nlos_profile!r}")
    L = int(L)

    k = rician_k * (1.0 - rng.uniform()) if random_k else float(rician_k)
    aods = rng.uniform(0.0, TWO_PI, size=L)
    aoas = rng.uniform(0.0, TWO_PI, size=L)
    if los_angles is not None:
        aods[0], aoas[0] = los_angles
    los_phase = rng.uniform(0.0, TWO_PI)
    nlos = (rng.standard_normal(L - 1) + 1j * rng.standard_normal(L - 1)) / np.sqrt(2.0)

    if L == 1:
        gains = np.array([np.exp(1j * los_phase)])
    else:
        if nlos_profile == "exponential":
            nlos = nlos * np.sqrt(decay ** np.arange(L - 1))
        nlos = nlos * np.sqrt(1.0 / (1.0 + k) / np.sum(np.abs(nlos) ** 2))
        los = np.sqrt(k / (1.0 + k)) * np.exp(1j * los_phase)
        gains = np.concatenate([[los], nlos])

    paths = tuple(
        Path(gain=complex(g), aod=float(wrap_angle(d)), aoa=float(wrap_angle(a)), is_los=(i == 0))
        for i, (g, d, a) in enumerate(zip(gains, aods, aoas))
    )
    return PathSet(paths=paths, path_loss=path_loss)


def build_channel(paths: PathSet, bs: ArrayConfig, ms: ArrayConfig) -> np.ndarray:
    """Narrowband channel ``H = (1/gamma) sum_l mu_l p_MS(aoa_l) p_BS(aod_l)^H``.

    Returns an ``N_MS x N_BS`` complex matrix.
    """
    a_bs = steering_matrix(paths.aods, bs)
    a_ms = steering_matrix(paths.aoas, ms)
    return (a_ms * paths.gains[None, :]) @ a_bs.conj().T / paths.path_loss
